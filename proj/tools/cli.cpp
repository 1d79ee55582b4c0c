#include "cli.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "skewlab/constructions.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/relative.hpp"
#include "skewlab/serialize.hpp"

namespace skew::cli {

namespace {

using io::Json;

Json read_input(const Config& c) {
  if (c.input.empty()) throw ParseError("--input is required for " + c.command);
  std::ifstream in(c.input);
  if (!in) throw ParseError("cannot open input '" + c.input + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("input '" + c.input + "' is not valid JSON: " + e.what());
  }
}

Rational eps_of(const Config& c) {
  if (c.eps.empty()) throw ParseError("--eps is required for " + c.command);
  Rational e = Rational::parse(c.eps);
  if (e.sign() <= 0) throw ParseError("--eps must be positive");
  return e;
}

// Runs body(i) for i in [0, n) on `jobs` threads. Results are written by index,
// so the output never depends on scheduling.
template <class F>
void parallel_for(long n, int jobs, F body) {
  if (jobs <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (long i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// defect-scan

PAdicSet set_from_json(const Json& j, int p, const std::string& field) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("indices")) {
    throw ParseError("field '" + field + "' must be {\"rank\", \"indices\"}");
  }
  try {
    return PAdicSet(p, j.at("rank").get<int>(), j.at("indices").get<std::vector<Index>>());
  } catch (const Json::exception& e) {
    throw ParseError("field '" + field + "': " + e.what());
  } catch (const Error& e) {
    throw ParseError("invalid '" + field + "': " + e.what());
  }
}

// "A" for X × [0,1/2), {"rects": [{"x": set, "y": set}, ...]} or a step function.
StepFunctionZ function_from_json(const Json& j, int p, const std::string& field) {
  if (j.is_string() && j.get<std::string>() == "A") return StepFunctionZ::half_fiber(p);
  if (j.is_object() && j.contains("rects")) {
    const Json& rects = j.at("rects");
    if (!rects.is_array()) throw ParseError("field '" + field + ".rects' must be an array");
    std::vector<Rectangle> out;
    for (std::size_t i = 0; i < rects.size(); ++i) {
      const std::string name = field + ".rects[" + std::to_string(i) + "]";
      if (!rects[i].is_object() || !rects[i].contains("x") || !rects[i].contains("y")) {
        throw ParseError("field '" + name + "' must be {\"x\", \"y\"}");
      }
      out.push_back({set_from_json(rects[i].at("x"), p, name + ".x"),
                     set_from_json(rects[i].at("y"), p, name + ".y")});
    }
    if (out.empty()) return StepFunctionZ::constant(p, 0, Rational(0));
    return StepFunctionZ::indicator(out);
  }
  if (j.is_object() && j.contains("values")) {
    try {
      return io::step_z_from_json(j);
    } catch (const ParseError& e) {
      throw ParseError("field '" + field + "': " + e.what());
    }
  }
  throw ParseError("field '" + field + "' must be \"A\", {\"rects\"} or a step function");
}

int defect_scan(const Config& c, std::ostream& out) {
  const Json in = read_input(c);
  const bool wrapped = in.is_object() && in.contains("transform");
  const SkewProduct t = io::skew_from_json(wrapped ? in.at("transform") : in);
  const StepFunctionZ f =
      wrapped && in.contains("f") ? function_from_json(in.at("f"), t.p(), "f") : StepFunctionZ::half_fiber(t.p());
  const StepFunctionZ g =
      wrapped && in.contains("g") ? function_from_json(in.at("g"), t.p(), "g") : StepFunctionZ::half_fiber(t.p());
  if (c.n_max < 1) throw ParseError("--n-max must be >= 1");

  const DefectReport mixing = defect_scan(DefectKind::mixing, t, f, g, c.n_max);
  const DefectReport rigidity = defect_scan(DefectKind::rigidity, t, f, g, c.n_max);

  if (c.format == Format::json) {
    out << io::canonical(Json{{"mixing", io::to_json(mixing)}, {"rigidity", io::to_json(rigidity)}}) << '\n';
    return kOk;
  }
  out << "n,mixing_defect_sq,rigidity_defect_sq";
  if (c.decimal) out << ",mixing_defect_sq_decimal,rigidity_defect_sq_decimal";
  out << '\n';
  for (std::size_t i = 0; i < mixing.entries.size(); ++i) {
    const auto& m = mixing.entries[i].defect_sq;
    const auto& r = rigidity.entries[i].defect_sq;
    out << mixing.entries[i].n << ',' << m.str() << ',' << r.str();
    if (c.decimal) out << ',' << m.decimal() << ',' << r.decimal();
    out << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// category-sweep

bool violates(const CategoryRow& row) {
  if (!row.in_p) return false;
  const Rational gap = row.mu_tka_cap_a - Rational(1, 4);
  return row.in_m || !(gap * gap > kMThresholdSq) || row.defect_sq < gap * gap;
}

int category_sweep(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.k_max < 1) throw ParseError("--k-max must be >= 1");
  std::vector<SkewProduct> corpus;
  if (!c.input.empty()) {
    const Json in = read_input(c);
    if (in.is_array()) {
      for (std::size_t i = 0; i < in.size(); ++i) {
        try {
          corpus.push_back(io::skew_from_json(in[i]));
        } catch (const ParseError& e) {
          throw ParseError("[" + std::to_string(i) + "]: " + e.what());
        }
      }
    } else {
      corpus.push_back(io::skew_from_json(in));
    }
  } else {
    if (c.samples < 1) throw ParseError("--samples must be >= 1");
    corpus = sample_corpus(c.p, c.rank < 0 ? 3 : c.rank, c.samples, c.seed);
  }

  const long count = static_cast<long>(corpus.size());
  std::vector<std::vector<CategoryRow>> rows(corpus.size());
  parallel_for(count, c.jobs, [&](long i) { rows[i] = category_sweep(corpus[i], c.k_max); });

  long total = 0, in_p = 0, in_m = 0;
  for (long i = 0; i < count; ++i) {
    for (const auto& row : rows[i]) {
      ++total;
      in_p += row.in_p;
      in_m += row.in_m;
      if (violates(row)) {
        err << "error: exclusion violated at sample " << i << ", k = " << row.k << '\n';
        out << io::canonical(Json{{"violation",
                                   {{"sample", i},
                                    {"k", row.k},
                                    {"mu_tka_cap_a", row.mu_tka_cap_a.str()},
                                    {"defect_sq", row.defect_sq.str()},
                                    {"transform", io::to_json(corpus[i])}}}})
            << '\n';
        return kFalsified;
      }
    }
  }

  if (c.format == Format::csv) {
    out << "sample,k,in_p,in_m,mu_tka_cap_a,defect_sq";
    if (c.decimal) out << ",mu_tka_cap_a_decimal,defect_sq_decimal";
    out << '\n';
    for (long i = 0; i < count; ++i) {
      for (const auto& row : rows[i]) {
        out << i << ',' << row.k << ',' << (row.in_p ? "true" : "false") << ','
            << (row.in_m ? "true" : "false") << ',' << row.mu_tka_cap_a.str() << ',' << row.defect_sq.str();
        if (c.decimal) out << ',' << row.mu_tka_cap_a.decimal() << ',' << row.defect_sq.decimal();
        out << '\n';
      }
    }
    return kOk;
  }
  Json table = Json::array();
  for (long i = 0; i < count; ++i) {
    for (const auto& row : rows[i]) {
      table.push_back({{"sample", i},
                       {"k", row.k},
                       {"in_p", row.in_p},
                       {"in_m", row.in_m},
                       {"mu_tka_cap_a", row.mu_tka_cap_a.str()},
                       {"defect_sq", row.defect_sq.str()}});
    }
  }
  out << io::canonical(Json{{"rows", table},
                            {"summary",
                             {{"samples", count}, {"rows", total}, {"in_p", in_p}, {"in_m", in_m}, {"violations", 0}}}})
      << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// build-conjugator

int build_conjugator(const Config& c, std::ostream& out, std::ostream& err) {
  const Json in = read_input(c);
  if (!in.is_object() || !in.contains("target") || !in.contains("hat")) {
    throw ParseError("input must be {\"target\", \"hat\", \"height\"?}");
  }
  const SkewProduct target = io::skew_from_json(in.at("target"));
  const SkewProduct hat = io::skew_from_json(in.at("hat"));
  const Rational eps = eps_of(c);

  RokhlinTower tower = [&] {
    if (!in.contains("height")) return choose_tower(target.base(), eps);
    if (!in.at("height").is_number_integer()) throw ParseError("field 'height' must be an integer");
    RokhlinTower t = rokhlin_tower(target.base(), in.at("height").get<long>());
    if (!(t.residual + t.level_measure() < eps)) {
      throw ResolutionError("tower of height " + std::to_string(t.height) + " has bound " +
                                (t.residual + t.level_measure()).str() + ", not below eps = " + eps.str(),
                            -1);
    }
    return t;
  }();

  const ConjugatorResult res = hgw_conjugator(target, hat, refine_tower(tower, label_partition(target)));
  const int rank = c.rank < 0 ? target.base_rank() : c.rank;
  const Rational wd = weak_distance(target, conjugate(res.conjugator, hat), rank);
  const Json cert = io::certificate_json(res.levels_verified, res.bound, wd);

  if (c.format == Format::json) {
    out << io::canonical(Json{{"S", io::to_json(res.conjugator)}, {"certificate", cert}, {"tower", io::to_json(tower)}})
        << '\n';
  } else {
    out << "levels_verified,bound,weak_distance\n"
        << res.levels_verified << ',' << res.bound.str() << ',' << wd.str() << '\n';
  }
  if (!(wd < eps)) {
    err << "error: weak distance " << wd << " is not below eps = " << eps << '\n';
    return kFalsified;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// rigidify

int rigidify(const Config& c, std::ostream& out) {
  const TranslationSkew s = io::translation_skew_from_json(read_input(c));
  const Rational eps = eps_of(c);
  const int rank = c.rank < 0 ? s.base().rank() : c.rank;
  const RigidifyResult r = periodic_rigidify(s, eps, rank);
  const Json cert{{"weak_distance", r.weak_distance.str()},
                  {"max_rank", r.max_rank},
                  {"period", r.period.get_str()},
                  {"period_verified", true}};
  if (c.format == Format::json) {
    out << io::canonical(Json{{"Q", io::to_json(r.q)}, {"certificate", cert}}) << '\n';
  } else {
    out << "weak_distance,max_rank,period\n"
        << r.weak_distance.str() << ',' << r.max_rank << ',' << r.period.get_str() << '\n';
  }
  return kOk;
}

int dispatch(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.jobs < 1) throw ParseError("--jobs must be >= 1");
  if (c.command == "defect-scan") return defect_scan(c, out);
  if (c.command == "category-sweep") return category_sweep(c, out, err);
  if (c.command == "build-conjugator") return build_conjugator(c, out, err);
  if (c.command == "rigidify") return rigidify(c, out);
  throw ParseError("unknown command '" + c.command + "'");
}

}  // namespace

std::vector<SkewProduct> sample_corpus(int p, int max_rank, long count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SkewProduct> corpus;
  corpus.reserve(static_cast<std::size_t>(count));
  const auto ranks = static_cast<std::uint64_t>(max_rank) + 1;
  for (long i = 0; i < count; ++i) {
    const int base_rank = static_cast<int>(rng.below(ranks));
    SampleOptions opts;
    opts.fiber_rank = static_cast<int>(rng.below(ranks));
    opts.labels = 1 + static_cast<std::size_t>(rng.below(3));
    const PAdicPermutation base = sample_permutation(p, base_rank, rng);
    corpus.push_back(sample_skew(base, opts, rng.next()));
  }
  return corpus;
}

int run(const Config& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  int code = kOk;
  try {
    code = dispatch(config, buffer, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FalsificationError& e) {
    err << "error: falsified: " << e.what() << '\n';
    return kFalsified;
  } catch (const CapError& e) {
    err << "error: " << e.what() << '\n';
    return kResolution;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (config.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!(file << buffer.str())) {
      err << "error: cannot write '" << config.out << "'\n";
      return kUsage;
    }
  }
  return code;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact experiments on piecewise-constant skew products"};
  Config c;
  std::string format = "json";
  app.add_option("--command", c.command, "defect-scan | category-sweep | build-conjugator | rigidify")
      ->required()
      ->check(CLI::IsMember({"defect-scan", "category-sweep", "build-conjugator", "rigidify"}));
  app.add_option("--input", c.input, "input JSON path");
  app.add_option("--n-max", c.n_max, "largest n for defect-scan");
  app.add_option("--k-max", c.k_max, "largest k for category-sweep");
  app.add_option("--rank", c.rank, "rank bound (sweep) or reference rank (constructions)");
  app.add_option("--eps", c.eps, "tolerance as num/den");
  app.add_option("--seed", c.seed, "corpus seed");
  app.add_option("--samples", c.samples, "corpus size for category-sweep");
  app.add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--p", c.p, "prime base of sampled corpora")->check(CLI::Range(2, 64));
  app.add_option("--out", c.out, "output path (default stdout)");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--decimal", c.decimal, "add 20-digit decimal columns to csv output");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  c.format = format == "csv" ? Format::csv : Format::json;
  return run(c, out, err);
}

}  // namespace skew::cli
