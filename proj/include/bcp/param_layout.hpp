#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bcp/process.hpp"

namespace bcp {

/// Estimable parameters in the canonical order
/// (alpha1, alpha2, beta11, beta12, beta21, beta22, omega1, omega2, phi).
enum class Param { alpha1, alpha2, beta11, beta12, beta21, beta22, omega1, omega2, phi };

std::string param_name(Param p);
std::optional<Param> param_from_name(const std::string& name);

/// Which parameters are free in a given model structure, and how they map to a vector.
class ParamLayout {
 public:
  ParamLayout() = default;
  ParamLayout(bool b_diagonal, bool include_phi);

  static ParamLayout full(bool b_diagonal) { return ParamLayout(b_diagonal, true); }

  std::size_t size() const { return params_.size(); }
  const std::vector<Param>& params() const { return params_; }
  Param operator[](std::size_t i) const { return params_[i]; }
  std::optional<std::size_t> index_of(Param p) const;
  bool b_diagonal() const { return b_diagonal_; }
  bool includes_phi() const { return include_phi_; }
  std::vector<std::string> names() const;

  Eigen::VectorXd pack(const ModelParams& m) const;
  /// Writes the free entries of v into a copy of base.
  ModelParams unpack(const Eigen::VectorXd& v, const ModelParams& base) const;

 private:
  std::vector<Param> params_;
  bool b_diagonal_ = false;
  bool include_phi_ = true;
};

double get_param(const ModelParams& m, Param p);
void set_param(ModelParams& m, Param p, double value);

}  // namespace bcp
