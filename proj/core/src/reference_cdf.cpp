#include "rmt/reference_cdf.hpp"

#include <cmath>

#include "rmt/laws.hpp"
#include "rmt/tracy_widom.hpp"

namespace rmt {

std::string ReferenceCdf::name() const {
  switch (kind_) {
    case CdfKind::semicircle:
      return "semicircle";
    case CdfKind::std_normal:
      return "std_normal";
    case CdfKind::tracy_widom_2:
      return "tracy_widom_2";
  }
  return "?";
}

double ReferenceCdf::operator()(double x) const {
  switch (kind_) {
    case CdfKind::semicircle:
      return semicircle_cdf(x);
    case CdfKind::std_normal:
      return 0.5 * std::erfc(-x / std::sqrt(2.0));
    case CdfKind::tracy_widom_2:
      if (x <= -10.0) return 0.0;
      if (x >= 8.0) return 1.0;
      return tw2_cdf(x);
  }
  return 0.0;
}

}  // namespace rmt
