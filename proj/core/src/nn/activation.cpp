#include "infocap/nn/activation.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "infocap/errors.hpp"

namespace infocap::nn {

double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double log_sigmoid(double t) { return -softplus(-t); }

std::string Activation::name() const {
  switch (kind) {
    case ActivationKind::relu: return "relu";
    case ActivationKind::leaky_relu: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "leaky_relu(%.17g)", slope);
      return buf;
    }
    case ActivationKind::softplus: return "softplus";
    case ActivationKind::sigmoid: return "sigmoid";
    case ActivationKind::tanh: return "tanh";
    case ActivationKind::identity: return "identity";
  }
  return "identity";
}

Activation Activation::parse(std::string_view text) {
  if (text == "relu") return relu();
  if (text == "softplus") return softplus();
  if (text == "sigmoid") return sigmoid();
  if (text == "tanh") return tanh();
  if (text == "identity" || text == "linear") return identity();
  if (text == "leaky_relu") return leaky_relu();
  constexpr std::string_view prefix = "leaky_relu(";
  if (text.starts_with(prefix) && text.ends_with(")")) {
    const auto body = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    double slope = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), slope);
    if (ec == std::errc{} && ptr == body.data() + body.size()) return leaky_relu(slope);
  }
  throw ConfigError("unknown activation '" + std::string(text) + "'");
}

void apply_activation(const Activation& act, const Matrix& pre, Matrix& post) {
  switch (act.kind) {
    case ActivationKind::relu: post = pre.cwiseMax(0.0); break;
    case ActivationKind::leaky_relu: {
      const double s = act.slope;
      post = pre.unaryExpr([s](double v) { return v > 0 ? v : s * v; });
      break;
    }
    case ActivationKind::softplus: post = pre.unaryExpr([](double v) { return softplus(v); }); break;
    case ActivationKind::sigmoid: post = pre.unaryExpr([](double v) { return sigmoid(v); }); break;
    case ActivationKind::tanh: post = pre.array().tanh().matrix(); break;
    case ActivationKind::identity: post = pre; break;
  }
}

void activation_derivative(const Activation& act, const Matrix& pre, const Matrix& post,
                           Matrix& out) {
  switch (act.kind) {
    case ActivationKind::relu:
      out = pre.unaryExpr([](double v) { return v > 0 ? 1.0 : 0.0; });
      break;
    case ActivationKind::leaky_relu: {
      const double s = act.slope;
      out = pre.unaryExpr([s](double v) { return v > 0 ? 1.0 : s; });
      break;
    }
    case ActivationKind::softplus: out = pre.unaryExpr([](double v) { return sigmoid(v); }); break;
    case ActivationKind::sigmoid: out = (post.array() * (1.0 - post.array())).matrix(); break;
    case ActivationKind::tanh: out = (1.0 - post.array().square()).matrix(); break;
    case ActivationKind::identity: out.setOnes(pre.rows(), pre.cols()); break;
  }
}

}  // namespace infocap::nn
