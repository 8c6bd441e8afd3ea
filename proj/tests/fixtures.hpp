#pragma once

#include <bcp/process.hpp>

// Parameter sets shared by several test files.
inline bcp::ModelParams config_a(double phi = 0.1) {
  bcp::ModelParams p;
  p.omega = {1.0, 1.0};
  p.a = bcp::Mat2::diag(0.3, 0.2);
  p.b = bcp::Mat2{{0.3, 0.1, 0.2, 0.2}};
  p.b_diagonal = false;
  p.phi = phi;
  return p;
}

inline bcp::ModelParams se_design(double phi = 0.7) {
  bcp::ModelParams p;
  p.omega = {1.0, 0.5};
  p.a = bcp::Mat2::diag(0.4, 0.3);
  p.b = bcp::Mat2::diag(0.2, 0.4);
  p.b_diagonal = true;
  p.phi = phi;
  return p;
}

inline bcp::SeriesPair small_series() {
  bcp::SeriesPair s;
  s.y1 = {2, 1, 4};
  s.y2 = {3, 0, 2};
  return s;
}
