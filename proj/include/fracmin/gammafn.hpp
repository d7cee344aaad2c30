#pragma once

namespace fracmin {

// log Gamma(x) for x > 0. Lanczos approximation (g = 607/128, 15 terms),
// relative accuracy around 1e-14 on (0, 172); callers that need Gamma of
// large arguments without overflow should stay in log space.
double log_gamma(double x);

// Gamma(x) for x > 0, exp(log_gamma) with reflection below 1/2 handled
// inside log_gamma. Throws std::domain_error for x <= 0.
double gamma_fn(double x);

}  // namespace fracmin
