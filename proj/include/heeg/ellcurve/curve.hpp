#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "heeg/exactnum/rational.hpp"

namespace heeg {

enum class ReductionKind { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

std::string to_string(ReductionKind k);

struct Kodaira {
  enum Type { I0, In, II, III, IV, I0s, Ins, IVs, IIIs, IIs };
  Type type = I0;
  int n = 0;  // for In and In*
  std::string to_string() const;
  bool operator==(const Kodaira&) const = default;
};

struct ReductionData {
  long ell = 0;
  ReductionKind kind = ReductionKind::Good;
  Kodaira kodaira;
  long tamagawa = 1;
  long conductorExponent = 0;
  long discValuation = 0;
  Integer nsCount = 0;  // |E^ns(F_ell)|
};

// [u, r, s, t]: x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct ChangeOfCoords {
  Rational u = 1, r = 0, s = 0, t = 0;
};

class WeierstrassCurve {
 public:
  // Any rational model; throws SingularCurve when the discriminant vanishes.
  WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6, std::string label = "");
  static WeierstrassCurve from_ainvs(const std::array<long, 5>& a, std::string label = "");
  // "a1,a2,a3,a4,a6" or "[a1,a2,a3,a4,a6]".
  static WeierstrassCurve parse(const std::string& text, std::string label = "");

  const Rational& a1() const { return a_[0]; }
  const Rational& a2() const { return a_[1]; }
  const Rational& a3() const { return a_[2]; }
  const Rational& a4() const { return a_[3]; }
  const Rational& a6() const { return a_[4]; }
  const std::array<Rational, 5>& ainvs() const { return a_; }
  const Rational& b2() const { return b_[0]; }
  const Rational& b4() const { return b_[1]; }
  const Rational& b6() const { return b_[2]; }
  const Rational& b8() const { return b_[3]; }
  const Rational& c4() const { return c4_; }
  const Rational& c6() const { return c6_; }
  const Rational& disc() const { return disc_; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  std::string ainvs_string() const;

  bool is_integral() const;
  WeierstrassCurve change_coords(const ChangeOfCoords& w) const;

  // Conductor and local data; the curve must be an integral model. The cache is
  // shared between copies and filled under a mutex.
  Integer conductor() const;
  std::vector<long> bad_primes() const;
  ReductionData reduction(long ell) const;
  bool operator==(const WeierstrassCurve& o) const { return a_ == o.a_; }

 private:
  std::array<Rational, 5> a_;
  std::array<Rational, 4> b_;
  Rational c4_, c6_, disc_;
  std::string label_;

  struct Cache {
    std::mutex mu;
    std::optional<std::vector<long>> badPrimes;
    std::map<long, ReductionData> local;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Tate's algorithm at ell on an integral model; the model need not be minimal
// at ell (the returned data refers to the ell-minimal model).
ReductionData tate_algorithm(const WeierstrassCurve& E, long ell);
// As above, also returning an ell-minimal integral model.
std::pair<ReductionData, WeierstrassCurve> tate_with_model(const WeierstrassCurve& E, long ell);

// Reduced globally minimal model (a1, a3 in {0,1}, a2 in {-1,0,1}).
WeierstrassCurve minimal_model(const WeierstrassCurve& E);
// Minimal model of the quadratic twist by d (d squarefree, d != 0).
WeierstrassCurve quadratic_twist(const WeierstrassCurve& E, long d);

}  // namespace heeg
