#pragma once

namespace tgrass {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile for u in (0, 1). Acklam's rational approximation
/// polished by one Halley step against erfc; absolute error is near machine
/// precision over the double range used here.
double normal_quantile(double u);

}  // namespace tgrass
