#include "infocap/nn/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "infocap/errors.hpp"

namespace infocap::nn {

namespace {

constexpr std::string_view kMagic = "infocap-mlp v1";

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(' ');
  const auto e = s.find_last_not_of(' ');
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

void save_snapshot(const Mlp& net, std::ostream& out) {
  out << kMagic << "; dims=";
  for (std::size_t i = 0; i < net.dims().size(); ++i) out << (i ? "," : "") << net.dims()[i];
  out << "; acts=";
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    out << (l ? "," : "") << net.layer(l).activation.name();
  }
  out << '\n';
  for (double v : net.flatten()) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    std::array<char, 8> bytes{};
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
    out.write(bytes.data(), bytes.size());
  }
  if (!out) throw ConfigError("save_snapshot: write failed");
}

void save_snapshot(const Mlp& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("save_snapshot: cannot open " + path.string());
  save_snapshot(net, out);
}

Mlp load_snapshot(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ConfigError("load_snapshot: missing header");
  const auto fields = split(header, ';');
  if (fields.size() != 3 || trim(fields[0]) != kMagic) {
    throw ConfigError("load_snapshot: bad header '" + header + "'");
  }
  const std::string dims_field = trim(fields[1]);
  const std::string acts_field = trim(fields[2]);
  if (!dims_field.starts_with("dims=") || !acts_field.starts_with("acts=")) {
    throw ConfigError("load_snapshot: bad header '" + header + "'");
  }

  std::vector<int> dims;
  for (const auto& d : split(dims_field.substr(5), ',')) {
    try {
      dims.push_back(std::stoi(d));
    } catch (const std::exception&) {
      throw ConfigError("load_snapshot: bad dimension '" + d + "'");
    }
  }
  std::vector<Activation> acts;
  for (const auto& a : split(acts_field.substr(5), ',')) acts.push_back(Activation::parse(a));

  Mlp net(dims, acts, 0);
  std::vector<double> values(net.parameter_count());
  for (double& v : values) {
    std::array<char, 8> bytes{};
    if (!in.read(bytes.data(), bytes.size())) throw ConfigError("load_snapshot: truncated payload");
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[b])) << (8 * b);
    }
    v = std::bit_cast<double>(bits);
  }
  net.unflatten(values);
  return net;
}

Mlp load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("load_snapshot: cannot open " + path.string());
  return load_snapshot(in);
}

}  // namespace infocap::nn
