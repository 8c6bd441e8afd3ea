#pragma once

#include <bcp/param_layout.hpp>
#include <bcp/process.hpp>
#include <bcp/rng.hpp>

// Random stationary parameter points for property tests.
inline bcp::ModelParams random_params(bcp::Rng& rng, bool b_diagonal) {
  for (;;) {
    bcp::ModelParams p;
    p.b_diagonal = b_diagonal;
    p.omega = {0.3 + 1.5 * rng.uniform(), 0.3 + 1.5 * rng.uniform()};
    p.a = bcp::Mat2::diag(0.05 + 0.4 * rng.uniform(), 0.05 + 0.4 * rng.uniform());
    p.b = b_diagonal ? bcp::Mat2::diag(0.05 + 0.35 * rng.uniform(), 0.05 + 0.35 * rng.uniform())
                     : bcp::Mat2{{0.05 + 0.3 * rng.uniform(), 0.02 + 0.15 * rng.uniform(),
                                  0.02 + 0.15 * rng.uniform(), 0.05 + 0.3 * rng.uniform()}};
    p.phi = -0.6 + 1.2 * rng.uniform();
    if (bcp::stationarity_check(p).margin > 0.1) return p;
  }
}
