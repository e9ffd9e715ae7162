#include "infocap/estimators/family.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "infocap/errors.hpp"

namespace infocap::estimators {

namespace {

std::string format_param(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_param(std::string_view body, std::string_view whole) {
  if (body == "inf") return std::numeric_limits<double>::infinity();
  double v = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc{} || ptr != body.data() + body.size()) {
    throw ConfigError("bad estimator parameter in '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

std::string Family::name() const {
  switch (kind) {
    case FamilyKind::kl_dime: return "kl_dime";
    case FamilyKind::gan_dime: return "gan_dime";
    case FamilyKind::hd_dime: return "hd_dime";
    case FamilyKind::gamma_dime: return "gamma_dime(" + format_param(gamma) + ")";
    case FamilyKind::mine: return "mine";
    case FamilyKind::nwj: return "nwj";
    case FamilyKind::smile: return "smile(" + format_param(tau) + ")";
    case FamilyKind::cpc: return "cpc";
  }
  return "unknown";
}

Family Family::parse(std::string_view text) {
  std::string_view head = text;
  std::string_view param;
  if (const auto open = text.find('('); open != std::string_view::npos) {
    if (!text.ends_with(")")) throw ConfigError("bad estimator tag '" + std::string(text) + "'");
    head = text.substr(0, open);
    param = text.substr(open + 1, text.size() - open - 2);
  }
  Family f;
  if (head == "kl_dime") f.kind = FamilyKind::kl_dime;
  else if (head == "gan_dime") f.kind = FamilyKind::gan_dime;
  else if (head == "hd_dime") f.kind = FamilyKind::hd_dime;
  else if (head == "gamma_dime") f.kind = FamilyKind::gamma_dime;
  else if (head == "mine") f.kind = FamilyKind::mine;
  else if (head == "nwj") f.kind = FamilyKind::nwj;
  else if (head == "smile") f.kind = FamilyKind::smile;
  else if (head == "cpc") f.kind = FamilyKind::cpc;
  else throw ConfigError("unknown estimator family '" + std::string(text) + "'");

  if (!param.empty()) {
    const double v = parse_param(param, text);
    if (f.kind == FamilyKind::gamma_dime) f.gamma = v;
    else if (f.kind == FamilyKind::smile) f.tau = v;
    else if (f.kind == FamilyKind::mine) f.ema_decay = v;
    else throw ConfigError("estimator '" + std::string(head) + "' takes no parameter");
  }
  if (!(f.gamma > 0)) throw ConfigError("gamma_dime: gamma must be > 0");
  if (!(f.tau > 0)) throw ConfigError("smile: tau must be > 0");
  if (!(f.ema_decay >= 0 && f.ema_decay < 1)) throw ConfigError("mine: EMA decay must lie in [0,1)");
  return f;
}

bool Family::is_fdime() const noexcept {
  return kind == FamilyKind::kl_dime || kind == FamilyKind::gan_dime ||
         kind == FamilyKind::hd_dime || kind == FamilyKind::gamma_dime;
}

}  // namespace infocap::estimators
