#pragma once

#include <string>

namespace rmt {

enum class CdfKind { semicircle, std_normal, tracy_widom_2 };

// Monotone reference distribution function with limits 0 and 1.
class ReferenceCdf {
 public:
  explicit ReferenceCdf(CdfKind kind) : kind_(kind) {}

  static ReferenceCdf semicircle() { return ReferenceCdf(CdfKind::semicircle); }
  static ReferenceCdf std_normal() { return ReferenceCdf(CdfKind::std_normal); }
  static ReferenceCdf tracy_widom_2() { return ReferenceCdf(CdfKind::tracy_widom_2); }

  CdfKind kind() const { return kind_; }
  std::string name() const;

  double operator()(double x) const;

 private:
  CdfKind kind_;
};

}  // namespace rmt
