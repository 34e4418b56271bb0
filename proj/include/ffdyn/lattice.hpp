#pragma once

#include "ffdyn/elliptic.hpp"
#include "ffdyn/linalg.hpp"
#include "ffdyn/projpoint.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ffdyn {

enum class KodairaKind { I, II, III, IV, IStar, IVStar, IIIStar, IIStar };

struct KodairaType {
  KodairaKind kind = KodairaKind::I;
  int n = 0;  // for I_n and I_n*
  std::string name() const;
  /// "I0", "I3", "II", "III", "IV", "I2*", "IV*", "III*", "II*".
  static KodairaType parse(std::string_view s);
};

/// Components of one fiber with M_ij = F_{v,i} . F_{v,j} (per unit place
/// degree), multiplicities, and the component met by the zero section.
struct FiberConfig {
  std::string place;  // "t", "t+4", "inf", ...
  std::optional<KodairaType> type;
  std::vector<std::vector<long long>> matrix;
  std::vector<long long> mult;
  std::size_t identity = 0;
  int place_degree = 1;

  std::size_t size() const { return mult.size(); }
};

/// Template with component 0 as the identity component.
FiberConfig kodaira_template(KodairaType type, std::string place = "");

/// Shape checks (square, symmetric, off-diagonal >= 0, positive mult,
/// identity in range). Throws ValidationError naming the failed row.
void validate_shape(const FiberConfig& cfg);
/// Shape checks plus sum_j m_j M_ij = 0 for every row.
void validate_fiber(const FiberConfig& cfg);

struct LocalHodgeReport {
  bool fiber_trivial = true;   // sum_j m_j M_ij = 0 for all i
  bool semidefinite = true;    // M <= 0
  bool kernel_matches = true;  // ker M = span(mult)
  bool pass = true;
  std::vector<Rational> pivots;
  std::vector<std::vector<Rational>> kernel;
  std::string witness;
};
LocalHodgeReport check_local_hodge(const FiberConfig& cfg);

/// Local intersection of two distinct sections of P^1 x B: ord_v of the
/// cross term a_x b_y - a_y b_x at finite places, the reversed cross term at
/// infinity. Total h(x) + h(y) is checked.
LocalHeightProfile section_intersection(const ProjPoint& x, const ProjPoint& y,
                                        std::uint64_t seed = kDefaultSeed);

struct Section {
  std::string name;
  std::optional<ProjPoint> point;   // trivial model
  std::optional<EPoint> epoint;     // elliptic model: the point of E(K)
  std::optional<Rational> self;     // self-intersection, abstract models
  std::map<std::string, std::size_t> incidence;                           // place -> component
  std::map<std::string, std::map<std::string, long long>> local_cross;    // other -> place -> number
};

enum class ModelKind { Trivial, Abstract };

struct Model {
  const GaloisField* field = nullptr;
  ModelKind kind = ModelKind::Trivial;
  std::optional<EllipticCurve> curve;
  std::vector<FiberConfig> fibers;
  std::vector<Section> sections;

  const Section& section(const std::string& name) const;
  const FiberConfig* fiber(const std::string& place) const;
  /// Section names unique, points present, incidences in range and on
  /// multiplicity-one components. Throws ValidationError.
  void validate() const;
};

/// Horizontal part: section name -> multiplicity; vertical part: place ->
/// coefficient per component.
struct ModelDivisor {
  std::map<std::string, Rational> horizontal;
  std::map<std::string, std::vector<Rational>> vertical;
};

Rational generic_degree(const ModelDivisor& D);

/// 2 h(x) on the trivial model; a stored value on abstract models.
Rational section_self_intersection(const Model& model, const std::string& name);
long long section_self_intersection(const ProjPoint& x);
/// Global intersection number of two sections.
Rational section_pairing(const Model& model, const std::string& a, const std::string& b);

/// D + Phi with Phi vertical, (D + Phi) . F_{v,i} = 0 for every component,
/// Phi = 0 on each identity component; `shift` adds shift * (full fiber) at
/// every declared fiber.
ModelDivisor flat_correction(const Model& model, const ModelDivisor& D, const Rational& shift = 0);
/// Intersection number of two model divisors.
Rational intersect(const Model& model, const ModelDivisor& D, const ModelDivisor& E);
/// (D + Phi_D) . (E + Phi_E).
Rational model_pairing(const Model& model, const ModelDivisor& D, const ModelDivisor& E);

struct FaltingsHriljacReport {
  Rational pairing;            // (D + Phi)^2
  HeightEstimate hx;           // h_x of the class (2 * Neron-Tate height)
  Rational expected;           // -h_x.value
  Rational difference;         // pairing - expected
  Rational bound;              // 2 * hx.error_bound
  bool pass = false;
  std::string class_point;     // the class of D in E(K), or "trivial"
};
FaltingsHriljacReport faltings_hriljac_check(const Model& model, const ModelDivisor& D,
                                             const CanonicalHeightOptions& opt = {});

std::string format_place(const Place& v);
Place parse_place(const GaloisField& field, std::string_view text);

}  // namespace ffdyn
