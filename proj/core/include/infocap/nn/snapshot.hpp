#pragma once

#include <filesystem>
#include <iosfwd>

#include "infocap/nn/mlp.hpp"

namespace infocap::nn {

// Snapshot layout: one ASCII header line
//   infocap-mlp v1; dims=<d0,d1,...>; acts=<a0,a1,...>\n
// followed by the parameters as little-endian IEEE-754 doubles, in
// Mlp::flatten() order (per layer: weight row-major, then bias).

void save_snapshot(const Mlp& net, std::ostream& out);
void save_snapshot(const Mlp& net, const std::filesystem::path& path);

/// Throws ConfigError on a malformed header or truncated payload.
Mlp load_snapshot(std::istream& in);
Mlp load_snapshot(const std::filesystem::path& path);

}  // namespace infocap::nn
