#pragma once

#include "hitkernel/value.hpp"

namespace hitkernel {

/// Toggles for mutation testing of the evaluator; production code uses the defaults.
struct EvalOptions {
  bool qelim_point_beta = true;
  bool j_refl_beta = true;
};

/// Normalization by evaluation over a read-only global environment.
///
/// `eval` fires beta for functions, pair projections, natrec on numerals, J on refl,
/// qelim on qmk, and unfolds definitions. `readback` and `convertible` are type-directed,
/// giving eta for functions, pairs and Unit.
class Normalizer {
 public:
  explicit Normalizer(const GlobalEnv& globals, EvalOptions options = {});

  ValuePtr eval(const Env& env, const TermPtr& t) const;
  ValuePtr apply(const Closure& c, const std::vector<ValuePtr>& args) const;

  ValuePtr do_app(const ValuePtr& fn, const ValuePtr& arg) const;
  ValuePtr do_fst(const ValuePtr& p) const;
  ValuePtr do_snd(const ValuePtr& p) const;
  ValuePtr do_natrec(const Closure& motive, const ValuePtr& zero_case, const Closure& succ_case,
                     const ValuePtr& n) const;
  ValuePtr do_j(const ValuePtr& type, const ValuePtr& base, const Closure& motive, const ValuePtr& refl_case,
                const ValuePtr& endpoint, const ValuePtr& path) const;
  ValuePtr do_qelim(const ValuePtr& carrier, const ValuePtr& relation, const Closure& motive,
                    const Closure& point_case, const Closure& coh_case, const ValuePtr& scrutinee) const;

  /// The kernel's transport: J over `family` (one binder) along `path : Id carrier from to`.
  ValuePtr transport(const ValuePtr& carrier, const Closure& family, const ValuePtr& from, const ValuePtr& to,
                     const ValuePtr& path, const ValuePtr& u) const;

  /// Type of relations on `carrier`: carrier -> carrier -> U (at an unspecified level).
  ValuePtr relation_type(const ValuePtr& carrier) const;

  /// Type required of a qelim coherence case at points a, b and witness r : relation a b.
  ValuePtr qelim_coh_type(const ValuePtr& carrier, const ValuePtr& relation, const Closure& motive,
                          const Closure& point_case, const ValuePtr& a, const ValuePtr& b,
                          const ValuePtr& r) const;

  TermPtr readback(const Locals& locals, const ValuePtr& v, const ValuePtr& type) const;
  TermPtr readback_type(const Locals& locals, const ValuePtr& type) const;

  bool convertible(const Locals& locals, const ValuePtr& v, const ValuePtr& w, const ValuePtr& type) const;
  bool convertible_types(const Locals& locals, const ValuePtr& a, const ValuePtr& b) const;

  /// Type of a neutral value, reconstructed from its head and spine.
  ValuePtr neutral_type(const Locals& locals, const val::Neutral& n) const;

  const GlobalEnv& globals() const { return globals_; }
  const EvalOptions& options() const { return options_; }

 private:
  ValuePtr head_type(const Locals& locals, const Head& head) const;
  ValuePtr frame_type(const Locals& locals, const ValuePtr& prefix, const ValuePtr& prefix_type,
                      const Frame& f) const;
  TermPtr readback_neutral(const Locals& locals, const val::Neutral& n, ValuePtr* type_out) const;
  ValuePtr stuck_type(const ValuePtr& v) const;
  ValuePtr conv_neutral(const Locals& locals, const val::Neutral& a, const val::Neutral& b) const;

  const GlobalEnv& globals_;
  EvalOptions options_;
};

}  // namespace hitkernel
