#include "infocap/harness/mind_sweep.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "infocap/errors.hpp"
#include "infocap/harness/csv.hpp"
#include "infocap/harness/stairs.hpp"
#include "infocap/harness/worker_pool.hpp"

namespace infocap::harness {

MindConfig MindConfig::from(const ConfigFile& file) {
  const Section& s = file.section("mind");
  MindConfig c;
  c.alphabet = s.get_string("alphabet", c.alphabet);
  c.source_P = s.get_double("source_P", c.source_P);
  c.prior = s.get_doubles("prior", {});
  c.channel = s.get_string("channel", c.channel);
  c.middleton_P = s.get_double("middleton_P", c.middleton_P);
  c.middleton_B = s.get_double("middleton_B", c.middleton_B);
  c.ebn0_db = s.get_doubles("ebn0_db", c.ebn0_db);
  c.per_snr = s.get_bool("per_snr", c.per_snr);
  c.iters = s.get_int("iters", c.iters);
  c.decoder.hidden = s.get_ints("hidden", c.decoder.hidden);
  c.decoder.hidden_activation = nn::Activation::parse(s.get_string("activation", "relu"));
  c.decoder.adam.lr = s.get_double("lr", c.decoder.adam.lr);
  c.decoder.batch = s.get_u64("batch", c.decoder.batch);
  c.decoder.abort_threshold = s.get_double("abort_threshold", c.decoder.abort_threshold);
  c.test_samples = s.get_u64("test_samples", c.test_samples);
  c.seeds = s.get_u64s("seeds", c.seeds);
  s.reject_unknown();
  c.validate();
  return c;
}

mind::Alphabet MindConfig::make_alphabet() const {
  mind::Alphabet a;
  if (alphabet == "bpsk") {
    a = mind::Alphabet::bpsk();
  } else if (alphabet == "pam4_nonuniform") {
    a = mind::Alphabet::pam4_nonuniform(source_P);
  } else if (alphabet.starts_with("pam")) {
    a = mind::Alphabet::pam(static_cast<int>(parse_long(alphabet.substr(3), "alphabet size")));
  } else if (alphabet.starts_with("repetition")) {
    a = mind::Alphabet::repetition(static_cast<int>(parse_long(alphabet.substr(10), "repetition length")));
  } else {
    throw ConfigError("mind: unknown alphabet '" + alphabet + "'");
  }
  if (!prior.empty()) a.prior = prior;
  a.validate();
  return a;
}

std::shared_ptr<const channels::Channel> MindConfig::make_channel(const mind::Alphabet& a, double db) const {
  channels::ChannelParams p;
  p.dim = a.dim();
  const double sigma = mind::sigma_for_ebn0(a, db);
  p.sigma = sigma;
  p.gamma = sigma;
  p.middleton_P = middleton_P;
  p.middleton_B = middleton_B;
  if (channel == "middleton") p.sigma = sigma / std::sqrt(1.0 - middleton_P + middleton_P * middleton_B);
  if (channel != "awgn" && channel != "middleton" && channel != "nonlinear_sqrt" && channel != "cauchy") {
    throw ConfigError("mind: unsupported channel '" + channel + "'");
  }
  return channels::make_channel(channel, p);
}

void MindConfig::validate() const {
  const auto a = make_alphabet();
  if (ebn0_db.empty()) throw ConfigError("mind: ebn0_db must not be empty");
  for (double db : ebn0_db) {
    if (!std::isfinite(db)) throw ConfigError("mind: ebn0_db must be finite");
    if (!make_channel(a, db)->has_likelihood()) throw ConfigError("mind: channel has no likelihood");
  }
  if (iters < 1) throw ConfigError("mind: iters must be >= 1");
  if (decoder.batch < 1) throw ConfigError("mind: batch must be >= 1");
  if (test_samples < 1) throw ConfigError("mind: test_samples must be >= 1");
  if (seeds.empty()) throw ConfigError("mind: seeds must not be empty");
  if (!(decoder.adam.lr > 0)) throw ConfigError("mind: lr must be > 0");
}

namespace {

struct Cell {
  std::vector<MindTrace> traces;
  std::vector<MindResult> results;
};

std::string run_name(double db, std::uint64_t replicate) {
  return "ebn0=" + format_double(db) + "_r" + std::to_string(replicate);
}

}  // namespace

MindRun run_mind(const MindConfig& c, std::uint64_t master_seed, unsigned threads) {
  c.validate();
  const auto alphabet = c.make_alphabet();
  const std::size_t points = c.per_snr ? c.ebn0_db.size() : 1;
  const std::size_t cells = points * c.seeds.size();

  std::function<Cell(std::size_t)> fn = [&](std::size_t i) {
    const std::size_t point = i / c.seeds.size();
    const std::uint64_t replicate = c.seeds[i % c.seeds.size()];
    const std::uint64_t seed = replicate_seed(master_seed, replicate);
    std::vector<std::shared_ptr<const channels::Channel>> chans;
    for (double db : c.ebn0_db) chans.push_back(c.make_channel(alphabet, db));

    mind::MindDecoder decoder(alphabet, alphabet.dim(), c.decoder, sampling::mix64(seed + 11 + point));
    sampling::Rng rng(seed, 4 + point);
    Cell cell;
    const double train_db = c.per_snr ? c.ebn0_db[point] : std::numeric_limits<double>::quiet_NaN();
    const std::string train_id = c.per_snr ? run_name(train_db, replicate) : "mixed_r" + std::to_string(replicate);
    for (long it = 0; it < c.iters; ++it) {
      const std::size_t k = c.per_snr ? point : static_cast<std::size_t>(rng.below(chans.size()));
      const auto idx = alphabet.sample_indices(c.decoder.batch, rng);
      const auto y = chans[k]->apply(alphabet.symbol_matrix(idx), rng);
      double v = 0;
      try {
        v = decoder.train_step(y, idx);
      } catch (const DivergenceError& e) {
        throw DivergenceError(train_id + ": " + e.what(), it, e.tag());
      }
      cell.traces.push_back({train_id, replicate, c.ebn0_db[k], it, v});
    }

    for (std::size_t k = 0; k < c.ebn0_db.size(); ++k) {
      if (c.per_snr && k != point) continue;
      sampling::Rng test_rng(seed, 1000 + k);
      MindResult r;
      r.run_id = run_name(c.ebn0_db[k], replicate);
      r.seed = replicate;
      r.ebn0_db = c.ebn0_db[k];
      r.ser = mind::compare_decoders(decoder, *chans[k], c.test_samples, test_rng);
      r.source_entropy_bits = alphabet.source_entropy_bits();
      const auto& e = r.ser.estimate;
      if (e.mi_bits > e.h_x_bits + 1e-12 || e.h_x_bits < -1e-12 || e.mi_bits < -1e-12) {
        throw NumericError(r.run_id + ": entropy estimates violate 0 <= I <= H(X)");
      }
      cell.results.push_back(std::move(r));
    }
    return cell;
  };
  auto parts = run_cells(cells, threads, fn);
  MindRun run;
  for (auto& p : parts) {
    run.traces.insert(run.traces.end(), p.traces.begin(), p.traces.end());
    run.results.insert(run.results.end(), p.results.begin(), p.results.end());
  }
  return run;
}

void write_mind(const std::filesystem::path& dir, const MindRun& run) {
  {
    CsvWriter w(dir / "records.csv", {"run_id", "seed", "ebn0_db", "iteration", "value"});
    for (const auto& t : run.traces) {
      w.row({t.run_id, std::to_string(t.seed), format_double(t.ebn0_db), std::to_string(t.iteration),
             format_double(t.value)});
    }
    w.close();
  }
  CsvWriter w(dir / "metrics.csv",
              {"run_id", "seed", "ebn0_db", "n", "ser_mind", "ser_map", "ser_maxl", "pe_estimate",
               "h_x_bits", "h_x_given_y_bits", "mi_bits", "source_entropy_bits"});
  for (const auto& r : run.results) {
    const auto& e = r.ser.estimate;
    w.row({r.run_id, std::to_string(r.seed), format_double(r.ebn0_db), std::to_string(r.ser.n),
           format_double(r.ser.ser_mind), format_double(r.ser.ser_map), format_double(r.ser.ser_maxl),
           format_double(e.error_probability), format_double(e.h_x_bits), format_double(e.h_x_given_y_bits),
           format_double(e.mi_bits), format_double(r.source_entropy_bits)});
  }
  w.close();
}

}  // namespace infocap::harness
