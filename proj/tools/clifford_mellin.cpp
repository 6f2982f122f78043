// clifford-mellin: command-line driver for the transform library.
//
// Exit codes: 0 ok, 1 usage, 2 file format / parse / I/O, 3 contract or
// domain violation, 4 registration found no match, 5 verification failed.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "clifford_mellin.hpp"

namespace cm = clifford_mellin;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitFormat = 2;
constexpr int kExitContract = 3;
constexpr int kExitNoMatch = 4;
constexpr int kExitVerifyFailed = 5;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Flags {
  std::string config_path;
  std::string algebra = "Cl(0,2)";
  std::string f;  // empty: algebra default
  std::string g;
  std::size_t ns = 64;
  std::size_t ntheta = 64;
  double smin = -std::numbers::pi;
  double smax = std::numbers::pi;
  std::uint64_t seed = 1;
  double tol = cm::kDefaultTolerance;
  std::string out;
  bool echo_config = false;
  std::vector<std::string> inputs;

  // Subcommand options.
  std::string reference;
  std::string csv;
  std::string center;
  std::string center2;
  std::string channels;
  std::string x = "1,0,0,0";
  std::size_t resolution = 16;
  std::size_t repeat = 3;
  bool pair_degenerate = false;
  bool full_direct = false;
};

/// Options shared by every subcommand.
struct SharedOptions {
  CLI::Option* algebra = nullptr;
  CLI::Option* f = nullptr;
  CLI::Option* g = nullptr;
  CLI::Option* ns = nullptr;
  CLI::Option* ntheta = nullptr;
  CLI::Option* smin = nullptr;
  CLI::Option* smax = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* out = nullptr;
};

void add_shared(CLI::App* sub, Flags& flags, SharedOptions& o) {
  sub->add_option("--config", flags.config_path,
                  "Load a JSON run configuration; explicit flags override it");
  o.algebra = sub->add_option("--algebra", flags.algebra,
                              "Cl(2,0), Cl(1,1) or Cl(0,2)");
  o.f = sub->add_option("--f", flags.f, "left root f as m0,m1,m2,m12");
  o.g = sub->add_option("--g", flags.g, "right root g as m0,m1,m2,m12");
  o.ns = sub->add_option("--ns", flags.ns, "samples in s = ln r");
  o.ntheta = sub->add_option("--ntheta", flags.ntheta, "samples in theta");
  o.smin = sub->add_option("--smin", flags.smin, "smallest log radius");
  o.smax = sub->add_option("--smax", flags.smax, "largest log radius");
  o.seed = sub->add_option("--seed", flags.seed, "PRNG seed (mt19937-64)");
  o.tol = sub->add_option("--tol", flags.tol, "tolerance for FFT-level identities");
  o.out = sub->add_option("--out", flags.out, "output path (written atomically)");
  sub->add_flag("--echo-config", flags.echo_config,
                "print the canonical JSON configuration and exit");
}

std::array<double, 4> parse_quad(const std::string& text, const char* what) {
  try {
    const cm::Multivector m = cm::parse_multivector(text, cm::Signature::cl02());
    return {m[0], m[1], m[2], m[3]};
  } catch (const cm::Error& e) {
    throw UsageError(std::string("--") + what + ": " + e.what());
  }
}

/// Flags layered over an optional --config file.
cm::RunConfig build_config(const std::string& command, const Flags& flags,
                           const SharedOptions& o) {
  cm::RunConfig c;
  bool from_file = false;
  if (!flags.config_path.empty()) {
    const auto bytes = cm::io::read_bytes(flags.config_path);
    c = cm::parse_config(std::string(bytes.begin(), bytes.end()));
    from_file = true;
  }
  c.command = command;
  auto use = [&](CLI::Option* opt) { return !from_file || opt->count() > 0; };
  if (use(o.algebra)) c.algebra = flags.algebra;
  if (o.f->count() > 0) c.f = parse_quad(flags.f, "f");
  if (o.g->count() > 0) c.g = parse_quad(flags.g, "g");
  if (!from_file && (o.f->count() == 0 || o.g->count() == 0)) {
    cm::Signature sig;
    try {
      sig = c.signature();
    } catch (const cm::Error& e) {
      throw UsageError(e.what());
    }
    const auto roots = cm::default_roots(sig);
    if (o.f->count() == 0) c.f = roots[0];
    if (o.g->count() == 0) c.g = roots[1];
  }
  if (use(o.ns)) c.geometry.ns = flags.ns;
  if (use(o.ntheta)) c.geometry.ntheta = flags.ntheta;
  if (use(o.smin)) c.geometry.smin = flags.smin;
  if (use(o.smax)) c.geometry.smax = flags.smax;
  if (use(o.seed)) c.seed = flags.seed;
  if (use(o.tol)) c.tolerance = flags.tol;
  if (use(o.out)) c.output = flags.out;
  if (!flags.inputs.empty() || !from_file) c.inputs = flags.inputs;
  if (!from_file) {
    // Image inputs take their radial range from the image unless given.
    c.options["auto_radius"] = o.smin->count() == 0 && o.smax->count() == 0;
  }
  return c;
}

/// Validates the parts of a config that come straight from flags.
void validate_config(const cm::RunConfig& c) {
  try {
    (void)c.signature();
  } catch (const cm::Error& e) {
    throw UsageError(e.what());
  }
  try {
    (void)c.pair();
  } catch (const cm::Error& e) {
    throw UsageError(std::string("invalid root pair: ") + e.what());
  }
  if (!(c.tolerance > 0.0)) throw UsageError("--tol must be positive");
}

bool option_flag(const cm::RunConfig& c, const char* key) {
  const auto it = c.options.find(key);
  return it != c.options.end() && it->second.is_boolean() && it->second.get<bool>();
}

std::string option_string(const cm::RunConfig& c, const char* key) {
  const auto it = c.options.find(key);
  return it != c.options.end() && it->second.is_string()
             ? it->second.get<std::string>()
             : std::string();
}

template <class T>
T option_value(const cm::RunConfig& c, const char* key, T fallback) {
  const auto it = c.options.find(key);
  return it != c.options.end() ? it->second.get<T>() : fallback;
}

void emit(const cm::RunConfig& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
  } else {
    cm::io::write_atomic(c.output, text);
  }
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

bool is_signal_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cm::IoError("cannot open '" + path + "'");
  char magic[4] = {};
  in.read(magic, 4);
  return in.gcount() == 4 && std::string(magic, 4) == "CLMS";
}

std::optional<cm::Point> parse_point(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--center expects x,y");
  try {
    return cm::Point{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("--center expects x,y");
  }
}

struct LoadedSignal {
  cm::LogPolarSignal signal;
  json source;
};

/// A CLMS signal, or a PGM/PPM image resampled about its centroid (or the
/// given center).
LoadedSignal load_signal(const cm::RunConfig& c, const std::string& path,
                         const std::string& center_text) {
  if (is_signal_file(path)) {
    cm::LogPolarSignal h = cm::read_signal(path);
    return {std::move(h), {{"kind", "signal"}, {"path", path}}};
  }
  const std::string map_text = option_string(c, "channels");
  const cm::ChannelMap map = map_text.empty() ? cm::ChannelMap{}
                                              : cm::parse_channel_map(map_text);
  const cm::MultivectorImage img = cm::ingest(path, c.signature(), map);
  cm::GridGeometry geo = c.geometry;
  if (option_flag(c, "auto_radius")) {
    geo = cm::image_geometry(img, c.geometry.ns, c.geometry.ntheta);
  }
  const cm::Point center = parse_point(center_text).value_or(cm::intensity_centroid(img));
  cm::LogPolarSignal h = cm::to_log_polar(img, center, geo);
  return {std::move(h),
          {{"kind", "image"},
           {"path", path},
           {"width", img.width},
           {"height", img.height},
           {"center", {center.x, center.y}},
           {"smin", geo.smin},
           {"smax", geo.smax}}};
}

json geometry_json(const cm::GridGeometry& g) {
  return {{"ns", g.ns}, {"ntheta", g.ntheta}, {"smin", g.smin}, {"smax", g.smax}};
}

struct DirectTiming {
  double seconds = 0.0;
  std::size_t bins_timed = 0;
  bool extrapolated = false;
  double max_deviation = 0.0;  // fast vs direct on the timed bins, relative
};

/// Direct-sum cost for the whole spectrum. Unless `full`, only an evenly
/// spread subset of bins is evaluated and the time is scaled up.
DirectTiming time_direct(const cm::LogPolarSignal& h, const cm::RootPair& pair,
                         const cm::Spectrum& fast, bool full) {
  const std::size_t total = h.geometry().size();
  const std::size_t want = full ? total : std::min<std::size_t>(total, 256);
  std::vector<std::pair<int, int>> bins;
  std::vector<std::size_t> index;
  for (std::size_t n = 0; n < want; ++n) {
    const std::size_t b = n * total / want;
    index.push_back(b);
    bins.emplace_back(fast.j_of(b), fast.k_of(b));
  }
  const auto start = Clock::now();
  const std::vector<cm::Multivector> direct = cm::cfmt_direct_bins(h, pair, bins);
  DirectTiming t;
  t.seconds = seconds_since(start) * static_cast<double>(total) /
              static_cast<double>(want);
  t.bins_timed = want;
  t.extrapolated = want < total;
  const double scale = std::max(1e-300, cm::max_modulus(fast.coeffs()));
  for (std::size_t n = 0; n < want; ++n) {
    t.max_deviation = std::max(
        t.max_deviation, cm::max_abs_diff(direct[n], fast.coeffs()[index[n]]) / scale);
  }
  return t;
}

json direct_json(const DirectTiming& t) {
  return {{"seconds", t.seconds},
          {"bins_timed", t.bins_timed},
          {"extrapolated", t.extrapolated},
          {"max_relative_deviation", t.max_deviation}};
}

// ----------------------------------------------------------------- commands

int cmd_transform(const cm::RunConfig& c) {
  if (c.inputs.size() != 1) throw UsageError("transform takes one input file");
  const cm::RootPair pair = c.pair();
  LoadedSignal in = load_signal(c, c.inputs[0], option_string(c, "center"));
  if (!(in.signal.signature() == pair.signature())) {
    throw UsageError("input is in " + cm::to_string(in.signal.signature()) +
                     " but --algebra is " + c.algebra);
  }
  const auto start = Clock::now();
  const cm::Spectrum spec = cm::cfmt_fast(in.signal, pair);
  const double fast_seconds = seconds_since(start);
  const DirectTiming direct =
      time_direct(in.signal, pair, spec, option_flag(c, "full_direct"));

  const std::string out = c.output.empty() ? c.inputs[0] + ".clmf" : c.output;
  cm::write_spectrum(out, spec);
  const std::string csv = option_string(c, "csv");
  if (!csv.empty()) {
    std::ostringstream text;
    cm::write_spectrum_csv(text, spec);
    cm::io::write_atomic(csv, text.str());
  }
  const double hn = cm::norm(in.signal);
  const double sn = cm::norm(spec);
  print_json({{"command", "transform"},
              {"input", in.source},
              {"output", out},
              {"algebra", c.algebra},
              {"pair", pair.describe()},
              {"blade_like", pair.blade_like()},
              {"geometry", geometry_json(in.signal.geometry())},
              {"norm_signal", hn},
              {"norm_spectrum", sn},
              {"relative_difference", hn > 0.0 ? std::abs(hn - sn) / hn : 0.0},
              {"parseval_asserted", pair.blade_like()},
              {"fast_seconds", fast_seconds},
              {"direct", direct_json(direct)}});
  return 0;
}

int cmd_invert(const cm::RunConfig& c) {
  if (c.inputs.size() != 1) throw UsageError("invert takes one spectrum file");
  if (c.output.empty()) throw UsageError("invert needs --out for the signal file");
  const cm::Spectrum spec = cm::read_spectrum(c.inputs[0]);
  const auto start = Clock::now();
  const cm::LogPolarSignal h = cm::cfmt_inverse(spec);
  const double seconds = seconds_since(start);
  cm::write_signal(c.output, h);
  json summary{{"command", "invert"},
               {"input", c.inputs[0]},
               {"output", c.output},
               {"pair", spec.pair().describe()},
               {"seconds", seconds}};
  const std::string reference = option_string(c, "reference");
  int code = 0;
  if (!reference.empty()) {
    const cm::LogPolarSignal ref = cm::read_signal(reference);
    const double err = cm::max_abs_diff(h, ref);
    summary["reference"] = reference;
    summary["round_trip_max_error"] = err;
    summary["tolerance"] = c.tolerance;
    summary["within_tolerance"] = err <= c.tolerance;
    if (err > c.tolerance) code = kExitVerifyFailed;
  }
  print_json(summary);
  return code;
}

int cmd_fast_bench(const cm::RunConfig& c) {
  const cm::RootPair pair = c.pair();
  cm::Rng rng(c.seed);
  const cm::LogPolarSignal h = cm::random_signal(c.geometry, pair.signature(), rng);
  const std::size_t repeat = std::max<std::size_t>(1, option_value<std::size_t>(c, "repeat", 3));
  (void)cm::cfmt_fast(h, pair);  // warm-up: plans and caches
  double best = std::numeric_limits<double>::infinity();
  cm::Spectrum spec(c.geometry, pair);
  for (std::size_t r = 0; r < repeat; ++r) {
    const auto start = Clock::now();
    spec = cm::cfmt_fast(h, pair);
    best = std::min(best, seconds_since(start));
  }
  const DirectTiming direct = time_direct(h, pair, spec, option_flag(c, "full_direct"));
  const json summary{{"command", "fast-bench"},
                     {"geometry", geometry_json(c.geometry)},
                     {"pair", pair.describe()},
                     {"threads", cm::worker_count()},
                     {"fast_seconds", best},
                     {"direct", direct_json(direct)},
                     {"speedup", direct.seconds / best}};
  emit(c, summary.dump(2) + "\n");
  return 0;
}

int cmd_verify(const cm::RunConfig& c, bool pair_given) {
  cm::VerifyOptions opt;
  opt.geometry = c.geometry;
  opt.seed = c.seed;
  opt.tolerance = c.tolerance;
  opt.degenerate = option_flag(c, "pair_degenerate");
  if (pair_given) opt.pair = c.pair();
  const auto results = cm::run_verify(opt);
  emit(c, cm::verify_report(results, opt).dump(2) + "\n");
  return cm::all_passed(results) ? 0 : kExitVerifyFailed;
}

int cmd_split(const cm::RunConfig& c) {
  const cm::RootPair pair = c.pair();
  cm::Multivector x(pair.signature());
  try {
    x = cm::parse_multivector(option_string(c, "x"), pair.signature());
  } catch (const cm::Error& e) {
    throw UsageError(std::string("--x: ") + e.what());
  }
  const cm::SplitPair sp = cm::split(x, pair);
  const double eigen =
      std::max(cm::max_abs_diff(cm::sandwich(sp.plus, pair), sp.plus),
               cm::max_abs_diff(cm::sandwich(sp.minus, pair), -sp.minus));
  json summary{{"command", "split"},
               {"algebra", c.algebra},
               {"pair", pair.describe()},
               {"x", cm::format_multivector(x)},
               {"plus", cm::format_multivector(sp.plus)},
               {"minus", cm::format_multivector(sp.minus)},
               {"degenerate", pair.degenerate()},
               {"blade_like", pair.blade_like()},
               {"eigen_residual", eigen}};
  if (pair.blade_like()) {
    summary["modulus_pythagoras_residual"] =
        std::abs(cm::modulus_squared(x) - cm::modulus_squared(sp.plus) -
                 cm::modulus_squared(sp.minus));
  }
  emit(c, summary.dump(2) + "\n");
  return 0;
}

int cmd_register(const cm::RunConfig& c) {
  if (c.inputs.size() != 2) throw UsageError("register takes two input files");
  const cm::RootPair pair = c.pair();
  json summary{{"command", "register"}, {"inputs", c.inputs}, {"pair", pair.describe()}};
  cm::Registration reg;
  if (is_signal_file(c.inputs[0]) && is_signal_file(c.inputs[1])) {
    const cm::LogPolarSignal h1 = cm::read_signal(c.inputs[0]);
    const cm::LogPolarSignal h2 = cm::read_signal(c.inputs[1]);
    reg = cm::register_signals(h1, h2, pair);
    summary["kind"] = "signal";
    summary["scale"] = reg.scale;
    summary["angle_rad"] = reg.angle;
  } else {
    const std::string map_text = option_string(c, "channels");
    const cm::ChannelMap map = map_text.empty() ? cm::ChannelMap{}
                                                : cm::parse_channel_map(map_text);
    const cm::MultivectorImage a = cm::ingest(c.inputs[0], c.signature(), map);
    const cm::MultivectorImage b = cm::ingest(c.inputs[1], c.signature(), map);
    cm::GridGeometry geo = c.geometry;
    if (option_flag(c, "auto_radius")) {
      geo = cm::registration_geometry(a, b, c.geometry.ns, c.geometry.ntheta);
    }
    const cm::ImageRegistration ir = cm::register_images(a, b, pair, geo);
    reg = ir.signal;
    summary["kind"] = "image";
    summary["scale"] = ir.motion.zoom;
    summary["angle_rad"] = ir.motion.rotation;
    summary["geometry"] = geometry_json(geo);
    summary["centers"] = {{ir.center1.x, ir.center1.y}, {ir.center2.x, ir.center2.y}};
  }
  summary["confidence"] = reg.confidence;
  summary["correlation"] = reg.correlation;
  summary["s_shift"] = reg.s_shift;
  summary["theta_shift"] = reg.theta_shift;
  summary["matched"] = reg.matched;
  emit(c, summary.dump(2) + "\n");
  return reg.matched ? 0 : kExitNoMatch;
}

int cmd_manifold(const cm::RunConfig& c) {
  const std::size_t resolution = option_value<std::size_t>(c, "resolution", 16);
  const auto points = cm::export_manifold(c.signature(), resolution);
  std::ostringstream text;
  cm::write_manifold_csv(text, points);
  emit(c, text.str());
  return 0;
}

int cmd_descriptor(const cm::RunConfig& c) {
  if (c.inputs.size() != 1) throw UsageError("descriptor takes one input file");
  const LoadedSignal in = load_signal(c, c.inputs[0], option_string(c, "center"));
  const cm::Descriptor d = cm::descriptor(in.signal, c.pair());
  std::ostringstream text;
  cm::write_descriptor_csv(text, d);
  emit(c, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford Fourier-Mellin transforms for Cl(2,0), Cl(1,1), Cl(0,2)",
               "clifford-mellin"};
  app.require_subcommand(1);
  Flags flags;
  SharedOptions shared;  // re-pointed by the subcommand that fires
  std::vector<std::pair<CLI::App*, SharedOptions>> subs;

  auto make = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    SharedOptions o;
    add_shared(sub, flags, o);
    subs.emplace_back(sub, o);
    return sub;
  };

  CLI::App* transform = make("transform", "forward CFMT of a CLMS signal or PGM/PPM image");
  transform->add_option("input", flags.inputs, "signal (.clms) or image (.pgm/.ppm)")->required();
  transform->add_option("--csv", flags.csv, "also write the spectrum as CSV");
  transform->add_option("--center", flags.center, "log-polar center x,y for images");
  transform->add_option("--channels", flags.channels, "blade per image channel, e.g. e1,e2,e12");
  transform->add_flag("--full-direct", flags.full_direct, "time the direct sum on every bin");

  CLI::App* invert = make("invert", "inverse CFMT of a CLMF spectrum");
  invert->add_option("input", flags.inputs, "spectrum (.clmf)")->required();
  invert->add_option("--reference", flags.reference, "original signal to compare against");

  CLI::App* bench = make("fast-bench", "time the FFT path against the direct double sum");
  CLI::Option* repeat_opt = bench->add_option("--repeat", flags.repeat, "timed repetitions of the fast path");
  bench->add_flag("--full-direct", flags.full_direct, "run the direct sum on every bin");

  CLI::App* verify = make("verify", "run the property suite and emit a JSON report");
  verify->add_flag("--pair-degenerate", flags.pair_degenerate, "use g = -f in every pair");

  CLI::App* split = make("split", "+- split of one multivector");
  CLI::Option* x_opt = split->add_option("--x", flags.x, "multivector as m0,m1,m2,m12");

  CLI::App* reg = make("register", "estimate scale and rotation between two inputs");
  reg->add_option("inputs", flags.inputs, "two images or two CLMS signals")->expected(2)->required();
  reg->add_option("--channels", flags.channels, "blade per image channel");

  CLI::App* manifold = make("manifold", "export the root-of-minus-one manifold as CSV");
  CLI::Option* resolution_opt = manifold->add_option("--resolution", flags.resolution, "chart nodes per axis (>= 2)");

  CLI::App* desc = make("descriptor", "CFMT magnitude descriptor as CSV");
  desc->add_option("input", flags.inputs, "signal (.clms) or image (.pgm/.ppm)")->required();
  desc->add_option("--center", flags.center, "log-polar center x,y for images");
  desc->add_option("--channels", flags.channels, "blade per image channel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  CLI::App* fired = nullptr;
  for (auto& [sub, o] : subs) {
    if (sub->parsed()) {
      fired = sub;
      shared = o;
    }
  }
  const std::string command = fired->get_name();

  try {
    cm::RunConfig config = build_config(command, flags, shared);
    auto set_if = [&](const char* key, bool present, json value) {
      if (present) config.options[key] = std::move(value);
    };
    set_if("csv", !flags.csv.empty(), flags.csv);
    set_if("center", !flags.center.empty(), flags.center);
    set_if("channels", !flags.channels.empty(), flags.channels);
    set_if("reference", !flags.reference.empty(), flags.reference);
    set_if("full_direct", flags.full_direct, true);
    set_if("pair_degenerate", flags.pair_degenerate, true);
    // Unset flags leave config-file values alone; defaults live at the use site.
    set_if("x", x_opt->count() > 0, flags.x);
    set_if("resolution", resolution_opt->count() > 0, flags.resolution);
    set_if("repeat", repeat_opt->count() > 0, flags.repeat);
    validate_config(config);

    if (flags.echo_config) {
      std::cout << cm::emit_config(config);
      return 0;
    }
    const bool pair_given =
        shared.algebra->count() + shared.f->count() + shared.g->count() > 0 ||
        !flags.config_path.empty();
    if (command == "transform") return cmd_transform(config);
    if (command == "invert") return cmd_invert(config);
    if (command == "fast-bench") return cmd_fast_bench(config);
    if (command == "verify") return cmd_verify(config, pair_given);
    if (command == "split") return cmd_split(config);
    if (command == "register") return cmd_register(config);
    if (command == "manifold") return cmd_manifold(config);
    if (command == "descriptor") return cmd_descriptor(config);
    throw UsageError("unknown command " + command);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << fired->help();
    return kExitUsage;
  } catch (const cm::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const cm::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const cm::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const cm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContract;
  }
}
