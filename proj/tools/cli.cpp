#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgp/eigensolver.hpp"
#include "sgp/error.hpp"
#include "sgp/generators.hpp"
#include "sgp/graph.hpp"
#include "sgp/io.hpp"
#include "sgp/laplacian.hpp"
#include "sgp/partition.hpp"

namespace sgp::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string command;
  std::vector<std::string> args;
  std::optional<std::string> input_digest;
  json config = json::object();
  std::vector<std::string> outputs;
  std::vector<std::string> warnings;
  std::optional<std::string> error;
};

struct GlobalFlags {
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::size_t max_iter = 500;
  std::size_t block_size = 0;  // 0: same as k
  std::string out;
  std::string laplacian = "standard";
};

std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

SignedGraph load_input(const std::string& path, Report& report) {
  report.input_digest = fnv1a64(read_file(path));
  return io::load_graph(path);
}

void write_text(const std::string& content, const std::string& path, std::ostream& out, Report& report) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  file << content;
  if (!file) throw Error(ErrorCode::Io, "write to " + path + " failed");
  report.outputs.push_back(path);
}

std::string fmt(double x) { return io::format_double(x); }

/// Columns of eigenvectors with a leading row of eigenvalues; vertices 1-based.
std::string modes_csv(const std::vector<std::string>& names, const Eigen::VectorXd& values,
                      const Eigen::MatrixXd& modes) {
  std::ostringstream s;
  s << "vertex";
  for (const auto& name : names) s << ',' << name;
  s << "\neigenvalue";
  for (Eigen::Index c = 0; c < values.size(); ++c) s << ',' << fmt(values[c]);
  s << '\n';
  for (Eigen::Index i = 0; i < modes.rows(); ++i) {
    s << (i + 1);
    for (Eigen::Index c = 0; c < modes.cols(); ++c) s << ',' << fmt(modes(i, c));
    s << '\n';
  }
  return s.str();
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < k; ++c) names.push_back(prefix + std::to_string(c));
  return names;
}

std::pair<std::size_t, double> parse_edge_weight(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("expected INDEX:WEIGHT, got '" + text + "'");
  std::size_t index = 0;
  double w = 0.0;
  const char* first = text.data();
  auto r1 = std::from_chars(first, first + colon, index);
  auto r2 = std::from_chars(first + colon + 1, first + text.size(), w);
  if (r1.ec != std::errc{} || r1.ptr != first + colon || r2.ec != std::errc{} || r2.ptr != first + text.size()) {
    throw UsageError("expected INDEX:WEIGHT, got '" + text + "'");
  }
  if (index == 0) throw Error(ErrorCode::BadOverrideIndex, "edge indices are 1-based");
  return {index - 1, w};
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& members) {
  std::vector<std::size_t> out;
  for (auto m : members) out.push_back(m + 1);
  return out;
}

json side_labels(const Partition& p) {
  json sides = json::array();
  for (auto s : p.side) sides.push_back(s == Side::A ? 0 : 1);
  return sides;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json metrics_json(const CutMetrics& m) {
  return json{{"cut", m.cut},
              {"cut_plus", m.cut_plus},
              {"cut_minus_cross", m.cut_minus_cross},
              {"cut_minus_within_a", m.cut_minus_within_a},
              {"cut_minus_within_b", m.cut_minus_within_b},
              {"signed_cut", m.signed_cut},
              {"ratio_cut", m.ratio_cut},
              {"signed_ratio_cut", m.signed_ratio_cut},
              {"total_negative", m.total_negative}};
}

json split_json(const Partition& p) {
  return json{{"side_a", one_based(p.members(Side::A))}, {"side_b", one_based(p.members(Side::B))}};
}

SolverOptions solver_options(const std::string& solver, const GlobalFlags& flags) {
  SolverOptions opts;
  opts.method = solver == "lobpcg" ? SolverMethod::Lobpcg : SolverMethod::Dense;
  opts.lobpcg.tol = flags.tol;
  opts.lobpcg.max_iter = flags.max_iter;
  opts.lobpcg.seed = flags.seed;
  opts.lobpcg.block_size = flags.block_size;
  return opts;
}

void record_solver_config(Report& report, const std::string& solver, const GlobalFlags& flags) {
  report.config["solver"] = solver;
  report.config["seed"] = flags.seed;
  report.config["tol"] = flags.tol;
  report.config["max_iter"] = flags.max_iter;
  report.config["block_size"] = flags.block_size;
}

void add_solver_flags(CLI::App* sub, GlobalFlags& flags, std::string& solver) {
  sub->add_option("--solver", solver, "Eigensolver")->check(CLI::IsMember({"dense", "lobpcg"}));
  sub->add_option("--seed", flags.seed, "Seed for the random initial block");
  sub->add_option("--tol", flags.tol, "LOBPCG residual tolerance");
  sub->add_option("--max-iter", flags.max_iter, "LOBPCG iteration cap");
  sub->add_option("--block-size", flags.block_size, "LOBPCG block size (default: k)");
}

void add_laplacian_flag(CLI::App* sub, GlobalFlags& flags) {
  sub->add_option("--laplacian", flags.laplacian, "Laplacian kind")->check(CLI::IsMember({"standard", "signed"}));
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string kind;
  std::size_t n = 0;
  std::vector<std::string> overrides;
  std::string neg_edge = "8:-0.5";
  double noise = 1e-2;
};

void cmd_gen(const GenArgs& a, const GlobalFlags& flags, std::ostream& out, Report& report) {
  report.config["kind"] = a.kind;
  SignedGraph g;
  if (a.kind == "path") {
    StringSpec spec{a.n == 0 ? kDefaultStringLength : a.n, {}};
    for (const auto& o : a.overrides) {
      const auto [index, w] = parse_edge_weight(o);
      spec.overrides.push_back({index, w});
    }
    report.config["n"] = spec.n;
    report.config["overrides"] = a.overrides;
    g = path_string(spec);
  } else if (a.kind == "noisy-string") {
    const auto [index, w] = parse_edge_weight(a.neg_edge);
    const auto n = a.n == 0 ? std::size_t{12} : a.n;
    report.config["n"] = n;
    report.config["neg_edge"] = a.neg_edge;
    report.config["noise"] = a.noise;
    report.config["seed"] = flags.seed;
    g = noisy_string(n, {index, w}, a.noise, flags.seed);
  } else {
    if (a.n != 0 || !a.overrides.empty()) throw UsageError(a.kind + " takes no --n or --override");
    g = a.kind == "cobra" ? cobra() : dumbbell();
  }

  if (flags.out.empty()) {
    io::write_matrix_market(out, g);
  } else {
    io::save_graph(flags.out, g);
    report.outputs.push_back(flags.out);
  }
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumArgs {
  std::string graph;
  std::size_t k = 5;
  std::string solver = "dense";
  bool deflate = false;
};

void cmd_spectrum(const SpectrumArgs& a, const GlobalFlags& flags, std::ostream& out, Report& report) {
  const auto g = load_input(a.graph, report);
  const auto kind = parse_laplacian_kind(flags.laplacian);
  record_solver_config(report, a.solver, flags);
  report.config["laplacian"] = flags.laplacian;
  report.config["k"] = a.k;
  report.config["deflate_ones"] = a.deflate;

  const auto n = g.vertex_count();
  const auto dim = a.deflate ? (n == 0 ? 0 : n - 1) : n;
  if (a.k < 1 || a.k > dim) {
    throw UsageError("k = " + std::to_string(a.k) + " must lie in [1, " + std::to_string(dim) + "]");
  }
  const auto op = laplacian(g, kind);
  const auto k = static_cast<Eigen::Index>(a.k);

  Spectrum s;
  if (a.solver == "dense") {
    s = a.deflate ? dense_spectrum_deflated(op) : dense_spectrum(op);
  } else {
    SolverConfig cfg;
    cfg.k = a.k;
    cfg.block_size = std::max(a.k, flags.block_size);
    cfg.tol = flags.tol;
    cfg.max_iter = flags.max_iter;
    cfg.seed = flags.seed;
    cfg.deflate_ones = a.deflate;
    auto result = lobpcg_smallest(op, cfg);
    report.config["iterations"] = result.trace.steps.size();
    s = std::move(result.spectrum);
    std::size_t unconverged = 0;
    for (bool c : s.converged) unconverged += c ? 0 : 1;
    if (unconverged > 0) {
      report.warnings.push_back(std::to_string(unconverged) + " of " + std::to_string(a.k) +
                                " eigenpairs did not converge");
    }
  }
  write_text(modes_csv(numbered("mode_", a.k), s.eigenvalues.head(k), s.eigenvectors.leftCols(k)), flags.out, out,
             report);
}

// ---------------------------------------------------------------------------
// partition

struct PartitionArgs {
  std::string graph;
  std::string solver = "dense";
  bool emit_confidence = false;
  std::string zero_policy = "positive";
};

json partition_json(const FiedlerResult& f, const Partition& p, bool with_confidence) {
  json j;
  j["n"] = p.size();
  j["side"] = side_labels(p);
  j["fiedler"] = vector_json(f.vector);
  j["eigenvalue"] = f.eigenvalue;
  j["kind"] = std::string(to_string(f.kind));
  j["gap"] = f.gap;
  j["clustered_warning"] = f.clustered_warning;
  if (with_confidence) j["confidence"] = vector_json(confidence(f));
  return j;
}

void cmd_partition(const PartitionArgs& a, const GlobalFlags& flags, std::ostream& out, Report& report) {
  const auto g = load_input(a.graph, report);
  const auto kind = parse_laplacian_kind(flags.laplacian);
  record_solver_config(report, a.solver, flags);
  report.config["laplacian"] = flags.laplacian;
  report.config["zero_policy"] = a.zero_policy;

  const auto f = fiedler(g, kind, solver_options(a.solver, flags));
  if (f.clustered_warning) {
    report.warnings.push_back("clustered_warning: Fiedler eigenvalue gap " + fmt(f.gap) +
                              " is below 1e-6 of the spectrum spread; the eigenvector is not well determined");
  }
  if (!f.converged) report.warnings.push_back("Fiedler eigenpair did not converge");
  const auto policy = a.zero_policy == "negative" ? ZeroPolicy::NegativeSide : ZeroPolicy::PositiveSide;
  const auto p = bisect(f, policy);
  write_text(partition_json(f, p, a.emit_confidence).dump(2) + "\n", flags.out, out, report);
}

// ---------------------------------------------------------------------------
// metrics

struct MetricsArgs {
  std::string graph;
  std::string partition;
};

Partition read_partition(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
  if (!j.contains("side") || !j["side"].is_array()) throw Error(ErrorCode::Parse, path + ": missing \"side\" array");
  std::vector<int> labels;
  for (const auto& v : j["side"]) {
    if (!v.is_number_integer()) throw Error(ErrorCode::Parse, path + ": side labels must be integers");
    labels.push_back(v.get<int>());
  }
  if (j.contains("n") && j["n"].get<std::size_t>() != labels.size()) {
    throw Error(ErrorCode::DimensionMismatch, path + ": \"n\" disagrees with the side array");
  }
  return partition_from_labels(labels);
}

void cmd_metrics(const MetricsArgs& a, const GlobalFlags& flags, std::ostream& out, Report& report) {
  const auto g = load_input(a.graph, report);
  report.config["partition"] = a.partition;
  const auto p = read_partition(a.partition);
  auto j = metrics_json(cut_metrics(g, p));
  j["size_a"] = p.count(Side::A);
  j["size_b"] = p.count(Side::B);
  write_text(j.dump(2) + "\n", flags.out, out, report);
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  std::string graph;
  std::string solver = "dense";
  std::size_t show = 6;
};

json kind_summary(const SignedGraph& g, LaplacianKind kind, const SolverOptions& opts, std::size_t show,
                  Report& report) {
  const auto op = laplacian(g, kind);
  const auto full = dense_spectrum(op);
  json j;
  j["smallest_eigenvalues"] = vector_json(full.eigenvalues.head(std::min<Eigen::Index>(full.eigenvalues.size(), static_cast<Eigen::Index>(show))));

  const auto f = fiedler(g, kind, opts);
  // Gap and conditioning always come from the dense spectrum so the two
  // kinds are measured the same way.
  std::size_t target = 0;
  if (kind == LaplacianKind::Signed) {
    target = f.skipped_constant ? 1 : 0;
  } else {
    const auto trivial = find_trivial(full);
    target = trivial && *trivial == 0 ? 1 : 0;
  }
  const bool exclude = kind == LaplacianKind::Standard || f.skipped_constant;
  j["fiedler_eigenvalue"] = f.eigenvalue;
  j["gap"] = spectral_gap(full, target, exclude);
  j["condition_number"] = eigenvector_condition_number(full, target, exclude);
  j["skipped_constant"] = f.skipped_constant;
  j["clustered_warning"] = f.clustered_warning;
  try {
    const auto p = bisect(f);
    j["partition"] = split_json(p);
    j["cut_metrics"] = metrics_json(cut_metrics(g, p));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateVector) throw;
    j["partition"] = nullptr;
    j["partition_error"] = e.what();
    report.warnings.push_back(std::string(to_string(kind)) + ": " + e.what());
  }
  return j;
}

void cmd_compare(const CompareArgs& a, const GlobalFlags& flags, std::ostream& out, Report& report) {
  const auto g = load_input(a.graph, report);
  record_solver_config(report, a.solver, flags);
  const auto opts = solver_options(a.solver, flags);

  json j;
  j["n"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["standard"] = kind_summary(g, LaplacianKind::Standard, opts, a.show, report);
  j["signed"] = kind_summary(g, LaplacianKind::Signed, opts, a.show, report);

  if (g.has_negative_edges()) {
    // Zero-weight baseline: the same graph with its negative edges removed.
    const auto base = dense_spectrum(laplacian(nullify_negative(g), LaplacianKind::Standard));
    const auto trivial = find_trivial(base);
    const std::size_t target = trivial && *trivial == 0 ? 1 : 0;
    const double gap = spectral_gap(base, target, true);
    const double cond = eigenvector_condition_number(base, target, true);
    j["baseline"] = json{{"gap", gap}, {"condition_number", cond}};
    j["ratios"] = json{
        {"gap_standard_over_baseline", j["standard"]["gap"].get<double>() / gap},
        {"gap_signed_over_baseline", j["signed"]["gap"].get<double>() / gap},
        {"condition_signed_over_standard",
         j["signed"]["condition_number"].get<double>() / j["standard"]["condition_number"].get<double>()},
    };
  }
  write_text(j.dump(2) + "\n", flags.out, out, report);
}

// ---------------------------------------------------------------------------
// demo

struct DemoArgs {
  std::string name;
  std::size_t n = 0;
};

class DemoWriter {
 public:
  DemoWriter(fs::path dir, Report& report) : dir_(std::move(dir)), report_(report) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + dir_.string());
  }

  void write(const std::string& file, const std::string& content) {
    std::ostringstream ignored;
    write_text(content, (dir_ / file).string(), ignored, report_);
  }

 private:
  fs::path dir_;
  Report& report_;
};

Eigen::MatrixXd columns_of(std::initializer_list<Eigen::VectorXd> cols) {
  Eigen::MatrixXd m(cols.begin()->size(), static_cast<Eigen::Index>(cols.size()));
  Eigen::Index c = 0;
  for (const auto& v : cols) m.col(c++) = v;
  return m;
}

json demo_string(const SignedGraph& g, const std::string& file, DemoWriter& w) {
  const auto s = dense_spectrum(laplacian(g, LaplacianKind::Standard));
  const Eigen::Index k = std::min<Eigen::Index>(5, s.eigenvalues.size());
  w.write(file, modes_csv(numbered("mode_", static_cast<std::size_t>(k)), s.eigenvalues.head(k), s.eigenvectors.leftCols(k)));
  const auto f = fiedler(g, LaplacianKind::Standard);
  json j;
  j["eigenvalues"] = vector_json(s.eigenvalues.head(k));
  j["fiedler_eigenvalue"] = f.eigenvalue;
  j["partition"] = split_json(bisect(f));
  if (auto e = dominant_sign_change(f.vector)) j["fiedler_sign_change_between"] = {*e + 1, *e + 2};
  return j;
}

json run_demo(const DemoArgs& a, const GlobalFlags& flags, Report& report) {
  DemoWriter w(flags.out.empty() ? fs::path("demo-output") : fs::path(flags.out), report);
  report.config["demo"] = a.name;
  report.config["seed"] = flags.seed;
  const std::size_t n = a.n != 0 ? a.n : kDefaultStringLength;
  json j;
  j["demo"] = a.name;

  if (a.name == "string-modes") {
    const auto g = path_string({n, {}});
    j.update(demo_string(g, "string_modes.csv", w));
    json closed = json::array();
    for (std::size_t k = 0; k < 5 && k < n; ++k) {
      closed.push_back(2.0 - 2.0 * std::cos(static_cast<double>(k) * M_PI / static_cast<double>(n)));
    }
    j["closed_form_eigenvalues"] = closed;
  } else if (a.name == "weak-link") {
    const auto g = path_string({n, {{kDefaultCutEdge, kDefaultWeakLinkWeight}}});
    j.update(demo_string(g, "weak_link_modes.csv", w));
  } else if (a.name == "negative-edge") {
    const auto g = path_string({n, {{kDefaultCutEdge, kDefaultNegativeWeight}}});
    j["standard"] = demo_string(g, "negative_edge_standard.csv", w);
    const auto sg = dense_spectrum(laplacian(g, LaplacianKind::Signed));
    w.write("negative_edge_signed.csv", modes_csv(numbered("mode_", 5), sg.eigenvalues.head(5), sg.eigenvectors.leftCols(5)));
    j["signed_eigenvalues"] = vector_json(sg.eigenvalues.head(5));
    const auto weak = fiedler(path_string({n, {{kDefaultCutEdge, kDefaultWeakLinkWeight}}}), LaplacianKind::Standard);
    const auto neg = fiedler(g, LaplacianKind::Standard);
    const auto i = static_cast<Eigen::Index>(kDefaultCutEdge);
    j["confidence_at_cut"] = json{{"negative_edge", {confidence(neg)[i], confidence(neg)[i + 1]}},
                                  {"weak_link", {confidence(weak)[i], confidence(weak)[i + 1]}}};
  } else if (a.name == "noisy-string") {
    const auto g = noisy_string(a.n != 0 ? a.n : 12, {7, -0.5}, 1e-2, flags.seed);
    const auto f = fiedler(g, LaplacianKind::Standard);
    const auto fs_ = fiedler(g, LaplacianKind::Signed);
    const auto& ss = fs_.spectrum;
    w.write("noisy_string_modes.csv",
            modes_csv({"standard_fiedler", "signed_first", "signed_second"},
                      Eigen::Vector3d(f.eigenvalue, ss.eigenvalues[0], ss.eigenvalues[1]),
                      columns_of({f.vector, ss.eigenvectors.col(0), ss.eigenvectors.col(1)})));
    j["standard_partition"] = split_json(bisect(f));
    j["signed_gap"] = fs_.gap;
    j["signed_spread"] = fs_.spread;
    j["signed_clustered_warning"] = fs_.clustered_warning;
    json signed_splits = json::array();
    for (Eigen::Index c = 0; c < 2; ++c) {
      try {
        signed_splits.push_back(split_json(bisect(ss.eigenvectors.col(c))));
      } catch (const Error&) {
        signed_splits.push_back(nullptr);
      }
    }
    j["signed_partitions"] = signed_splits;
  } else if (a.name == "cobra") {
    const auto g = cobra();
    const auto fl = fiedler(g, LaplacianKind::Standard);
    const auto f0 = fiedler(nullify_negative(g), LaplacianKind::Standard);
    const auto sg = dense_spectrum(laplacian(g, LaplacianKind::Signed));
    w.write("cobra_modes.csv",
            modes_csv({"standard_fiedler", "nullified_fiedler", "signed_first", "signed_second"},
                      Eigen::Vector4d(fl.eigenvalue, f0.eigenvalue, sg.eigenvalues[0], sg.eigenvalues[1]),
                      columns_of({fl.vector, f0.vector, sg.eigenvectors.col(0), sg.eigenvectors.col(1)})));
    j["standard"] = split_json(bisect(fl));
    j["nullified"] = split_json(bisect(f0));
    j["signed_second"] = split_json(bisect(sg.eigenvectors.col(1)));
    j["standard_cut_metrics"] = metrics_json(cut_metrics(g, bisect(fl)));
  } else if (a.name == "dumbbell") {
    const auto g = dumbbell();
    const auto fl = fiedler(g, LaplacianKind::Standard);
    const auto fs_ = fiedler(g, LaplacianKind::Signed);
    w.write("dumbbell_modes.csv", modes_csv({"standard_fiedler", "signed_fiedler"},
                                            Eigen::Vector2d(fl.eigenvalue, fs_.eigenvalue),
                                            columns_of({fl.vector, fs_.vector})));
    j["standard"] = split_json(bisect(fl));
    j["signed"] = split_json(bisect(fs_));
    j["standard_cut_metrics"] = metrics_json(cut_metrics(g, bisect(fl)));
    j["signed_cut_metrics"] = metrics_json(cut_metrics(g, bisect(fs_)));
  } else if (a.name == "gap-study") {
    // n = 100 with the repulsive edge at (37, 38) reproduces the reported
    // gap and conditioning ratios; override with --n.
    const std::size_t len = a.n != 0 ? a.n : 100;
    std::ostringstream csv;
    csv << "w,gap_baseline,gap_standard,gap_signed,cond_baseline,cond_standard,cond_signed,"
           "gap_standard_over_baseline,gap_signed_over_baseline,cond_signed_over_standard\n";
    json rows = json::array();
    const auto base = dense_spectrum(
        laplacian(nullify_negative(path_string({len, {{kDefaultCutEdge, -1.0}}})), LaplacianKind::Standard));
    const auto bt = find_trivial(base);
    const std::size_t base_target = bt && *bt == 0 ? 1 : 0;
    const double gap_b = spectral_gap(base, base_target, true);
    const double cond_b = eigenvector_condition_number(base, base_target, true);
    for (double wneg : {-0.01, -0.05, -0.1}) {
      const auto g = path_string({len, {{kDefaultCutEdge, wneg}}});
      const auto st = dense_spectrum_deflated(laplacian(g, LaplacianKind::Standard));
      const auto sg = dense_spectrum(laplacian(g, LaplacianKind::Signed));
      const double gap_s = spectral_gap(st, 0, false);
      const double cond_s = eigenvector_condition_number(st, 0, false);
      const double gap_g = spectral_gap(sg, 0, true);
      const double cond_g = eigenvector_condition_number(sg, 0, true);
      csv << fmt(wneg) << ',' << fmt(gap_b) << ',' << fmt(gap_s) << ',' << fmt(gap_g) << ',' << fmt(cond_b) << ','
          << fmt(cond_s) << ',' << fmt(cond_g) << ',' << fmt(gap_s / gap_b) << ',' << fmt(gap_g / gap_b) << ','
          << fmt(cond_g / cond_s) << '\n';
      rows.push_back(json{{"w", wneg},
                          {"gap_standard_over_baseline", gap_s / gap_b},
                          {"gap_signed_over_baseline", gap_g / gap_b},
                          {"cond_signed_over_standard", cond_g / cond_s}});
    }
    w.write("gap_study.csv", csv.str());
    j["n"] = len;
    j["rows"] = rows;
  } else if (a.name == "lobpcg-30") {
    const auto neg = path_string({n, {{kDefaultCutEdge, kDefaultNegativeWeight}}});
    struct Variant {
      std::string name;
      SymmetricOperator op;
      bool deflate;
    };
    const std::vector<Variant> variants{
        {"unit", laplacian(path_string({n, {}}), LaplacianKind::Standard), true},
        {"zero", laplacian(nullify_negative(neg), LaplacianKind::Standard), true},
        {"negative", laplacian(neg, LaplacianKind::Standard), true},
        {"signed", laplacian(neg, LaplacianKind::Signed), false},
    };
    constexpr std::size_t kSeeds = 20;
    json counts;
    Eigen::MatrixXd first(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(variants.size()));
    Eigen::VectorXd first_values(static_cast<Eigen::Index>(variants.size()));
    for (std::size_t v = 0; v < variants.size(); ++v) {
      std::size_t correct = 0;
      for (std::size_t s = 0; s < kSeeds; ++s) {
        SolverConfig cfg;
        cfg.k = 1;
        cfg.block_size = 2;
        cfg.max_iter = 30;
        cfg.tol = 1e-8;
        cfg.seed = flags.seed + s;
        cfg.deflate_ones = variants[v].deflate;
        const auto r = lobpcg_smallest(variants[v].op, cfg);
        const auto change = dominant_sign_change(r.spectrum.eigenvectors.col(0));
        if (change && *change == kDefaultCutEdge) ++correct;
        if (s == 0) {
          first.col(static_cast<Eigen::Index>(v)) = r.spectrum.eigenvectors.col(0);
          first_values[static_cast<Eigen::Index>(v)] = r.spectrum.eigenvalues[0];
        }
      }
      counts[variants[v].name] = correct;
    }
    w.write("lobpcg30_modes.csv", modes_csv({"unit", "zero", "negative", "signed"}, first_values, first));
    j["seeds"] = kSeeds;
    j["correct_cut_counts"] = counts;
  } else {
    throw UsageError("unknown demo '" + a.name + "'");
  }
  return j;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return kExitIo;
    case ErrorCode::SolverFailed:
    case ErrorCode::BasisDegenerate: return kExitSolver;
    case ErrorCode::MultiComponent: return kExitMultiComponent;
    case ErrorCode::DegenerateVector: return kExitDegenerate;
    default: return kExitUsage;
  }
}

void emit_report(const Report& r, int exit_code, double elapsed_ms, std::ostream& err) {
  json j;
  j["report"] = "sgp";
  j["command"] = r.command;
  j["args"] = r.args;
  j["input_digest"] = r.input_digest ? json(*r.input_digest) : json(nullptr);
  j["config"] = r.config;
  j["outputs"] = r.outputs;
  j["warnings"] = r.warnings;
  if (r.error) j["error"] = *r.error;
  j["exit_code"] = exit_code;
  j["elapsed_ms"] = elapsed_ms;
  err << j.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.args = args;

  CLI::App app{"Spectral bisection of signed graphs"};
  app.require_subcommand(1);
  GlobalFlags flags;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an example graph");
  gen_cmd->add_option("kind", gen.kind, "Graph family")
      ->required()
      ->check(CLI::IsMember({"path", "noisy-string", "cobra", "dumbbell"}));
  gen_cmd->add_option("--n", gen.n, "Vertex count (path: 75, noisy-string: 12)");
  gen_cmd->add_option("--override", gen.overrides, "Path edge reweighting I:W, edge (I, I+1) in 1-based labels");
  gen_cmd->add_option("--neg-edge", gen.neg_edge, "Noisy-string repulsive edge I:W (1-based)");
  gen_cmd->add_option("--noise", gen.noise, "Noisy-string noise amplitude");
  gen_cmd->add_option("--seed", flags.seed, "Noise seed");
  gen_cmd->add_option("--out", flags.out, "Output graph file (.mtx or .csv); stdout if omitted");

  SpectrumArgs spec;
  auto* spec_cmd = app.add_subcommand("spectrum", "Write the smallest eigenpairs as CSV");
  spec_cmd->add_option("graph", spec.graph, "Graph file (.mtx or .csv)")->required();
  spec_cmd->add_option("--k", spec.k, "Number of eigenpairs");
  spec_cmd->add_flag("--deflate-ones", spec.deflate, "Restrict to the complement of the ones vector");
  add_laplacian_flag(spec_cmd, flags);
  add_solver_flags(spec_cmd, flags, spec.solver);
  spec_cmd->add_option("--out", flags.out, "Output CSV; stdout if omitted");

  PartitionArgs part;
  auto* part_cmd = app.add_subcommand("partition", "Fiedler-vector bisection");
  part_cmd->add_option("graph", part.graph, "Graph file (.mtx or .csv)")->required();
  part_cmd->add_flag("--emit-confidence", part.emit_confidence, "Include squared Fiedler components");
  part_cmd->add_option("--zero-policy", part.zero_policy, "Side for zero components")
      ->check(CLI::IsMember({"positive", "negative"}));
  add_laplacian_flag(part_cmd, flags);
  add_solver_flags(part_cmd, flags, part.solver);
  part_cmd->add_option("--out", flags.out, "Output JSON; stdout if omitted");

  MetricsArgs met;
  auto* met_cmd = app.add_subcommand("metrics", "Cut metrics of a partition");
  met_cmd->add_option("graph", met.graph, "Graph file (.mtx or .csv)")->required();
  met_cmd->add_option("--partition", met.partition, "Partition JSON")->required();
  met_cmd->add_option("--out", flags.out, "Output JSON; stdout if omitted");

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Standard vs signed Laplacian on one graph");
  cmp_cmd->add_option("graph", cmp.graph, "Graph file (.mtx or .csv)")->required();
  cmp_cmd->add_option("--show", cmp.show, "How many smallest eigenvalues to list");
  add_solver_flags(cmp_cmd, flags, cmp.solver);
  cmp_cmd->add_option("--out", flags.out, "Output JSON; stdout if omitted");

  DemoArgs demo;
  auto* demo_cmd = app.add_subcommand("demo", "Run a named experiment end to end");
  demo_cmd->add_option("name", demo.name, "Experiment")
      ->required()
      ->check(CLI::IsMember({"string-modes", "weak-link", "negative-edge", "noisy-string", "cobra", "dumbbell",
                             "gap-study", "lobpcg-30"}));
  demo_cmd->add_option("--n", demo.n, "String length override");
  demo_cmd->add_option("--seed", flags.seed, "Seed (noisy-string noise, first LOBPCG seed)");
  demo_cmd->add_option("--out", flags.out, "Output directory (default demo-output)");

  int code = kExitOk;
  try {
    std::vector<const char*> argv{"sgp"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int rc = app.exit(e, out, err);
      report.command = "";
      if (rc != 0) report.error = e.what();
      code = rc == 0 ? kExitOk : kExitUsage;
      emit_report(report, code, 0.0, err);
      return code;
    }

    if (gen_cmd->parsed()) {
      report.command = "gen";
      cmd_gen(gen, flags, out, report);
    } else if (spec_cmd->parsed()) {
      report.command = "spectrum";
      cmd_spectrum(spec, flags, out, report);
    } else if (part_cmd->parsed()) {
      report.command = "partition";
      cmd_partition(part, flags, out, report);
    } else if (met_cmd->parsed()) {
      report.command = "metrics";
      cmd_metrics(met, flags, out, report);
    } else if (cmp_cmd->parsed()) {
      report.command = "compare";
      cmd_compare(cmp, flags, out, report);
    } else if (demo_cmd->parsed()) {
      report.command = "demo";
      out << run_demo(demo, flags, report).dump(2) << '\n';
    }
  } catch (const Error& e) {
    report.error = e.what();
    code = exit_code_for(e.code());
  } catch (const UsageError& e) {
    report.error = e.what();
    code = kExitUsage;
  }

  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  emit_report(report, code, elapsed, err);
  return code;
}

}  // namespace sgp::cli
