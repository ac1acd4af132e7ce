#include "negamoran/tail_sets.hpp"

#include <stdexcept>
#include <vector>

namespace negamoran {

const char* to_string(TailConvention convention) {
  switch (convention) {
    case TailConvention::Plain: return "plain";
    case TailConvention::ComplementEven: return "complement-even";
    case TailConvention::ComplementOdd: return "complement-odd";
  }
  return "?";
}

BlockMap block_map(const SystemParams& params, const ProbVector& P, TailConvention state, int c) {
  if (!params.admissible(c)) throw std::invalid_argument("block " + std::to_string(c) + " not admissible");
  const int s = params.base();
  BlockMap m{Rational(0), Rational(1), state};
  for (int i = 1; i <= c; ++i) {
    int d = i < c ? params.run_digit() : c;
    const bool flip = (state == TailConvention::ComplementEven && i % 2 == 0) ||
                      (state == TailConvention::ComplementOdd && i % 2 == 1);
    if (flip) d = s - 1 - d;
    m.offset += m.scale * P.beta(d);
    m.scale *= P.p(d);
  }
  if (c % 2 == 1 && state != TailConvention::Plain) {
    m.next = state == TailConvention::ComplementEven ? TailConvention::ComplementOdd
                                                      : TailConvention::ComplementEven;
  }
  return m;
}

namespace {

enum class Goal { Min, Max };

struct Solved {
  std::vector<Rational> values;
  std::vector<int> policy;
};

// States are indices into `states`; the successor of every (state, block)
// stays inside the list.
Solved policy_iteration(const SystemParams& params, const ProbVector& P,
                        const std::vector<TailConvention>& states, Goal goal) {
  const auto& alphabet = params.restricted_alphabet();
  const std::size_t n = states.size();
  auto index_of = [&](TailConvention c) {
    for (std::size_t i = 0; i < n; ++i) {
      if (states[i] == c) return i;
    }
    throw std::logic_error("state set not closed");
  };
  std::vector<std::vector<BlockMap>> maps(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c : alphabet) maps[i].push_back(block_map(params, P, states[i], c));
  }

  std::vector<std::size_t> policy(n, 0);
  std::vector<Rational> x(n);
  for (int iteration = 0;; ++iteration) {
    if (iteration > 1000) throw std::logic_error("policy iteration did not settle");
    // Evaluate: x_i - scale_i * x_next(i) = offset_i (at most 2x2).
    Rational a[2][2] = {{1, 0}, {0, 1}};
    Rational b[2];
    for (std::size_t i = 0; i < n; ++i) {
      const BlockMap& m = maps[i][policy[i]];
      a[i][index_of(m.next)] -= m.scale;
      b[i] = m.offset;
    }
    if (n == 1) {
      x[0] = b[0] / a[0][0];
    } else {
      const Rational det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
      x[0] = (b[0] * a[1][1] - a[0][1] * b[1]) / det;
      x[1] = (a[0][0] * b[1] - a[1][0] * b[0]) / det;
    }
    for (auto& v : x) v.canonicalize();

    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = policy[i];
      Rational best_value = x[i];
      for (std::size_t k = 0; k < maps[i].size(); ++k) {
        const BlockMap& m = maps[i][k];
        const Rational v = m.offset + m.scale * x[index_of(m.next)];
        if ((goal == Goal::Min && v < best_value) || (goal == Goal::Max && v > best_value)) {
          best = k;
          best_value = v;
        }
      }
      if (best != policy[i]) {
        policy[i] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }
  Solved out;
  out.values = x;
  for (auto k : policy) out.policy.push_back(alphabet[k]);
  return out;
}

BlockSeq witness_from(const SystemParams& params, const ProbVector& P,
                      const std::vector<TailConvention>& states, const std::vector<int>& policy,
                      std::size_t start) {
  // Follow the stationary policy until a state repeats.
  std::vector<std::size_t> visited;
  std::vector<int> blocks;
  std::size_t state = start;
  while (true) {
    for (std::size_t k = 0; k < visited.size(); ++k) {
      if (visited[k] == state) {
        BlockSeq w;
        w.prefix.assign(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(k));
        w.period.assign(blocks.begin() + static_cast<std::ptrdiff_t>(k), blocks.end());
        return w.canonical();
      }
    }
    visited.push_back(state);
    const int c = policy[state];
    blocks.push_back(c);
    const TailConvention next = block_map(params, P, states[state], c).next;
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i] == next) state = i;
    }
  }
}

}  // namespace

TailSets::TailSets(const SystemParams& params, const ProbVector& P) : params_(params), P_(P) {
  if (P.size() != params.base()) {
    throw std::invalid_argument("probability vector length " + std::to_string(P.size()) +
                                " does not match base " + std::to_string(params.base()));
  }
  const std::vector<std::vector<TailConvention>> groups = {
      {TailConvention::Plain},
      {TailConvention::ComplementEven, TailConvention::ComplementOdd}};
  for (const auto& states : groups) {
    const Solved lo = policy_iteration(params, P, states, Goal::Min);
    const Solved hi = policy_iteration(params, P, states, Goal::Max);
    for (std::size_t i = 0; i < states.size(); ++i) {
      TailHull& h = hulls_[static_cast<std::size_t>(states[i])];
      h.inf = {lo.values[i], witness_from(params, P, states, lo.policy, i)};
      h.sup = {hi.values[i], witness_from(params, P, states, hi.policy, i)};
    }
  }
}

const TailHull& TailSets::hull(TailConvention convention) const {
  return hulls_[static_cast<std::size_t>(convention)];
}

}  // namespace negamoran
