#include "bcp/param_layout.hpp"

#include <algorithm>
#include <array>

namespace bcp {

namespace {

constexpr std::array<const char*, 9> kNames{"alpha1", "alpha2", "beta11", "beta12", "beta21",
                                            "beta22", "omega1", "omega2", "phi"};

}  // namespace

std::string param_name(Param p) { return kNames[static_cast<std::size_t>(p)]; }

std::optional<Param> param_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (name == kNames[i]) return static_cast<Param>(i);
  }
  return std::nullopt;
}

ParamLayout::ParamLayout(bool b_diagonal, bool include_phi) : b_diagonal_(b_diagonal), include_phi_(include_phi) {
  params_ = {Param::alpha1, Param::alpha2, Param::beta11};
  if (!b_diagonal) {
    params_.push_back(Param::beta12);
    params_.push_back(Param::beta21);
  }
  params_.insert(params_.end(), {Param::beta22, Param::omega1, Param::omega2});
  if (include_phi) params_.push_back(Param::phi);
}

std::optional<std::size_t> ParamLayout::index_of(Param p) const {
  const auto it = std::find(params_.begin(), params_.end(), p);
  if (it == params_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - params_.begin());
}

std::vector<std::string> ParamLayout::names() const {
  std::vector<std::string> out;
  out.reserve(params_.size());
  for (Param p : params_) out.push_back(param_name(p));
  return out;
}

double get_param(const ModelParams& m, Param p) {
  switch (p) {
    case Param::alpha1: return m.a(0, 0);
    case Param::alpha2: return m.a(1, 1);
    case Param::beta11: return m.b(0, 0);
    case Param::beta12: return m.b(0, 1);
    case Param::beta21: return m.b(1, 0);
    case Param::beta22: return m.b(1, 1);
    case Param::omega1: return m.omega[0];
    case Param::omega2: return m.omega[1];
    case Param::phi: return m.phi;
  }
  return 0.0;
}

void set_param(ModelParams& m, Param p, double value) {
  switch (p) {
    case Param::alpha1: m.a(0, 0) = value; break;
    case Param::alpha2: m.a(1, 1) = value; break;
    case Param::beta11: m.b(0, 0) = value; break;
    case Param::beta12: m.b(0, 1) = value; break;
    case Param::beta21: m.b(1, 0) = value; break;
    case Param::beta22: m.b(1, 1) = value; break;
    case Param::omega1: m.omega[0] = value; break;
    case Param::omega2: m.omega[1] = value; break;
    case Param::phi: m.phi = value; break;
  }
}

Eigen::VectorXd ParamLayout::pack(const ModelParams& m) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(params_.size()));
  for (std::size_t i = 0; i < params_.size(); ++i) v[static_cast<Eigen::Index>(i)] = get_param(m, params_[i]);
  return v;
}

ModelParams ParamLayout::unpack(const Eigen::VectorXd& v, const ModelParams& base) const {
  ModelParams m = base;
  m.b_diagonal = b_diagonal_;
  if (b_diagonal_) {
    m.b(0, 1) = 0.0;
    m.b(1, 0) = 0.0;
  }
  for (std::size_t i = 0; i < params_.size(); ++i) set_param(m, params_[i], v[static_cast<Eigen::Index>(i)]);
  return m;
}

}  // namespace bcp
