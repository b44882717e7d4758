#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dolwit::jet {

/// Raised when raw variable data violates the shape constraints of the
/// jet algebra (index counts, normalization relations).
struct MalformedVariable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The four families of normalized jet variables.
///
/// Metric   g_{(U;V)}      holo/antiholo derivative blocks of the metric
/// Bundle   h_{(p q;U;V)}  derivatives of the bundle Hermitian metric
/// Holo     w_{(U;V)}      derivatives of the twisting (1,0)-form
/// AntiHolo wbar_{(U;V)}   derivatives of its conjugate
enum class JetKind : std::uint8_t { Metric = 0, Bundle = 1, Holo = 2, AntiHolo = 3 };

inline const char* kindName(JetKind k) {
  switch (k) {
    case JetKind::Metric: return "g";
    case JetKind::Bundle: return "h";
    case JetKind::Holo: return "w";
    case JetKind::AntiHolo: return "wbar";
  }
  return "?";
}

using IndexList = std::vector<int>;  // sorted ascending, values in 1..m

/// One normalized jet variable.  Index lists are stored sorted, which is the
/// canonical representative under the symmetric-group relations each family
/// satisfies.  The normalization relations make variables with an empty
/// derivative block on one side unrepresentable for g and h.
struct JetVariable {
  JetKind kind = JetKind::Metric;
  IndexList U;  // holomorphic indices (for g and w this includes the base index)
  IndexList V;  // antiholomorphic indices (for g and wbar this includes the base index)
  int p = 0, q = 0;  // bundle indices, Bundle kind only

  JetVariable() = default;
  JetVariable(JetKind k, IndexList u, IndexList v, int p_ = 0, int q_ = 0);

  int weight() const {
    int n = static_cast<int>(U.size() + V.size());
    return kind == JetKind::Metric ? n - 2 : n;
  }

  int degreeHolo(int idx) const;
  int degreeAnti(int idx) const;

  auto key() const { return std::tie(kind, U, V, p, q); }
  bool operator==(const JetVariable& o) const { return key() == o.key(); }
  bool operator<(const JetVariable& o) const {
    // fixed total order: (kind, total index count, U, V, bundle indices)
    int n = static_cast<int>(U.size() + V.size());
    int on = static_cast<int>(o.U.size() + o.V.size());
    return std::tie(kind, n, U, V, p, q) < std::tie(o.kind, on, o.U, o.V, o.p, o.q);
  }

  std::string str() const;
};

/// Validates shape constraints and sorts index lists.  Throws MalformedVariable.
JetVariable makeVariable(JetKind kind, IndexList U, IndexList V, int p = 0, int q = 0);

}  // namespace dolwit::jet
