#include "support/blocks.hpp"

#include <stdexcept>

namespace wysx::testing {

std::vector<SecBlock> sec_blocks(const ExprPtr& e, const Env& env, const PrinSet& ps, std::size_t fuel) {
  std::vector<SecBlock> out;
  Config c = Config::initial(Mode::par(ps), env, e);
  std::optional<Config> open;
  for (std::size_t i = 0; i < fuel; ++i) {
    StepOutcome step = st_step(std::move(c));
    if (std::holds_alternative<Done>(step)) return out;
    if (const auto* s = std::get_if<Stuck>(&step)) throw std::runtime_error("stuck at " + s->rule + ": " + s->reason);
    auto& n = std::get<Next>(step);
    c = std::move(n.config);
    if (n.rule == "S-assec") {
      open = c;
      open->stack.clear();  // the block itself, without the enclosing continuation
    } else if (n.rule == "S-secret" && open) {
      out.push_back({std::move(*open), c.value()});
      open.reset();
    }
  }
  throw std::runtime_error("out of fuel");
}

}  // namespace wysx::testing
