// nmfanon: audit, anonymize and measure graphs against mutual friend attacks.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nmfanon/nmfanon.hpp"

namespace {

using namespace nmfanon;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("NMFANON_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring invalid NMFANON_SEED='" << env << "'\n";
    }
  }
  return 0;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    save_text(path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string metrics_csv_header() {
  return "graph,vertices,edges,triangles,avg_clustering,avg_path_length,apl_mode,"
         "edges_added_ratio,edges_removed_ratio,vertices_added\n";
}

std::string metrics_csv_row(const std::string& label, const MetricsReport& m) {
  std::ostringstream out;
  out << std::setprecision(12) << label << ',' << m.vertices << ',' << m.edges << ','
      << m.triangles << ',' << m.avg_clustering << ',' << m.avg_path_length.value
      << ',' << (m.avg_path_length.sampled ? "sampled" : "exact") << ',';
  if (m.changes)
    out << m.changes->edges_added_ratio << ',' << m.changes->edges_removed_ratio
        << ',' << m.changes->vertices_added;
  else
    out << "0,0,0";
  out << '\n';
  return out.str();
}

struct MetricFlags {
  std::string apl_mode = "auto";
  std::size_t samples = kDefaultSamples;
  std::size_t bins = 20;
  bool exclude_low_degree = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--mode", apl_mode, "exact, sampled or auto (sampled above 10k vertices)")
        ->check(CLI::IsMember({"auto", "exact", "sampled"}));
    cmd->add_option("--samples", samples, "BFS sources in sampled mode")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--bins", bins, "betweenness histogram bins")->check(CLI::PositiveNumber);
    cmd->add_flag("--exclude-low-degree", exclude_low_degree,
                  "drop degree<2 vertices from the clustering mean");
  }

  MetricsOptions options(std::uint64_t seed) const {
    MetricsOptions o;
    o.seed = seed;
    o.histogram_bins = bins;
    o.exclude_low_degree_cc = exclude_low_degree;
    if (apl_mode == "exact") o.mode = MetricMode::exact();
    if (apl_mode == "sampled") o.mode = MetricMode::sampled(samples, seed);
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-NMF graph anonymization toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string input, output, report, csv, trace_path;
  std::uint64_t seed = default_seed();

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "count k-NMF and k-degree violations");
  std::vector<Count> audit_ks{5, 10, 15, 20, 25, 30, 50, 100};
  bool list_violations = false;
  audit_cmd->add_option("--input,-i", input, "edge list")->required();
  audit_cmd->add_option("--k", audit_ks, "one or more k values")->delimiter(',');
  audit_cmd->add_option("--report", report, "JSON report path (default stdout)");
  audit_cmd->add_option("--csv", csv, "CSV path: k,knmf_violations,kdeg_violations");
  audit_cmd->add_flag("--list-violations", list_violations, "include violating edges/vertices");

  // anonymize
  auto* anon_cmd = app.add_subcommand("anonymize", "make the graph k-NMF anonymous");
  Count k = 0;
  std::string algorithm = "adddel";
  anon_cmd->add_option("--input,-i", input, "edge list")->required();
  anon_cmd->add_option("--output,-o", output, "anonymized edge list")->required();
  anon_cmd->add_option("--k", k, "anonymity parameter")->required()->check(CLI::PositiveNumber);
  anon_cmd->add_option("--algorithm,-a", algorithm, "add-int, add-gre or adddel")
      ->check(CLI::IsMember({"add-int", "add-gre", "adddel"}));
  anon_cmd->add_option("--seed", seed, "RNG seed (env NMFANON_SEED)");
  anon_cmd->add_option("--report", report, "JSON summary path (default stdout)");
  anon_cmd->add_option("--trace", trace_path, "write the operation log as JSON lines");

  // kda
  auto* kda_cmd = app.add_subcommand("kda", "add k-degree anonymity to a k-NMF graph");
  std::optional<Count> k_deg, k_nmf;
  kda_cmd->add_option("--input,-i", input, "k-NMF anonymous edge list")->required();
  kda_cmd->add_option("--output,-o", output, "output edge list")->required();
  kda_cmd->add_option("--k-deg", k_deg, "k of the degree anonymity")->check(CLI::PositiveNumber);
  kda_cmd->add_option("--k-nmf", k_nmf, "k-NMF level to keep (default: input's level)")
      ->check(CLI::PositiveNumber);
  kda_cmd->add_option("--seed", seed, "RNG seed (env NMFANON_SEED)");
  kda_cmd->add_option("--report", report, "JSON summary path (default stdout)");
  kda_cmd->add_option("--trace", trace_path, "write the operation log as JSON lines");

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "utility metrics of one graph");
  MetricFlags mflags;
  std::string bc_csv;
  metrics_cmd->add_option("--input,-i", input, "edge list")->required();
  metrics_cmd->add_option("--seed", seed, "sampling seed (env NMFANON_SEED)");
  metrics_cmd->add_option("--report", report, "JSON report path (default stdout)");
  metrics_cmd->add_option("--csv", csv, "CSV metrics row");
  metrics_cmd->add_option("--betweenness-csv", bc_csv, "per-vertex betweenness CSV");
  mflags.add_to(metrics_cmd);

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "edge changes and paired metrics");
  std::string anonymized;
  compare_cmd->add_option("--original", input, "original edge list")->required();
  compare_cmd->add_option("--anonymized", anonymized, "anonymized edge list")->required();
  compare_cmd->add_option("--seed", seed, "sampling seed (env NMFANON_SEED)");
  compare_cmd->add_option("--report", report, "JSON report path (default stdout)");
  compare_cmd->add_option("--csv", csv, "CSV with one row per graph");
  mflags.add_to(compare_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*audit_cmd) {
      auto parsed = load_edge_list(input);
      for (Count kk : audit_ks)
        if (kk == 0) throw CLI::ValidationError("--k", "k must be >= 1");
      auto reports = audit_sweep(parsed.graph, audit_ks);
      json j = {{"input", input},
                {"vertices", parsed.graph.num_vertices()},
                {"edges", parsed.graph.num_edges()},
                {"ingest", to_json(parsed.stats)}};
      json rows = json::array();
      for (const auto& r : reports) rows.push_back(to_json(r, list_violations));
      j["reports"] = std::move(rows);
      emit(report, dump(j));
      if (!csv.empty()) emit(csv, audit_csv(reports));
      return 0;
    }

    if (*anon_cmd) {
      auto parsed = load_edge_list(input);
      Rng rng(seed);
      AnonymizeOptions opts;
      opts.trace = !trace_path.empty();
      AnonymizationResult res;
      if (algorithm == "adddel")
        res = adddel_anonymize(parsed.graph, k, rng, opts);
      else
        res = add_anonymize(parsed.graph, k,
                            algorithm == "add-int" ? GroupingStrategy::intuit
                                                   : GroupingStrategy::greedy,
                            rng, opts);
      auto violations = audit_knmf(res.graph, k);
      save_text(output, write_graph(res.graph, {{"command", "anonymize"},
                                                {"algorithm", algorithm},
                                                {"k", std::to_string(k)},
                                                {"seed", std::to_string(seed)}}));
      if (opts.trace) save_text(trace_path, trace_jsonl(res.trace));
      json j = {{"command", "anonymize"},
                {"algorithm", algorithm},
                {"k", k},
                {"seed", seed},
                {"input", input},
                {"output", output},
                {"result", to_json(res)},
                {"knmf_violations", violations.size()}};
      emit(report, dump(j));
      if (!violations.empty() || res.atpp_violations > 0) {
        std::cerr << "error: output violates " << k << "-NMF anonymity on "
                  << violations.size() << " edges\n";
        return 1;
      }
      return 0;
    }

    if (*kda_cmd) {
      if (!k_deg) {
        std::cerr << "usage error: kda requires --k-deg\n";
        return 2;
      }
      auto parsed = load_edge_list(input);
      Rng rng(seed);
      KdaOptions opts;
      opts.k_nmf = k_nmf;
      opts.trace = !trace_path.empty();
      Count level = k_nmf.value_or(anonymity_level(build_sequence(parsed.graph).values()));
      auto res = kda_anonymize(parsed.graph, *k_deg, rng, opts);
      save_text(output, write_graph(res.graph, {{"command", "kda"},
                                                {"k_deg", std::to_string(*k_deg)},
                                                {"k_nmf", std::to_string(level)},
                                                {"seed", std::to_string(seed)}}));
      if (opts.trace) save_text(trace_path, trace_jsonl(res.trace));
      auto nmf_bad = audit_knmf(res.graph, level);
      auto deg_bad = audit_kdegree(res.graph, *k_deg);
      Count tri_in = triangle_count(parsed.graph);
      Count tri_out = triangle_count(res.graph);
      json j = {{"command", "kda"},
                {"k_deg", *k_deg},
                {"k_nmf", level},
                {"seed", seed},
                {"input", input},
                {"output", output},
                {"result", to_json(res)},
                {"knmf_violations", nmf_bad.size()},
                {"kdeg_violations", deg_bad.size()},
                {"triangles_before", tri_in},
                {"triangles_after", tri_out}};
      emit(report, dump(j));
      if (!nmf_bad.empty() || !deg_bad.empty() || !res.failed_vertices.empty()) {
        std::cerr << "error: kda left " << deg_bad.size() << " k-degree and "
                  << nmf_bad.size() << " k-NMF violations ("
                  << res.failed_vertices.size() << " vertices could not be raised)\n";
        return 1;
      }
      return 0;
    }

    if (*metrics_cmd) {
      auto parsed = load_edge_list(input);
      auto m = compute_metrics(parsed.graph, mflags.options(seed));
      emit(report, dump(to_json(m)));
      if (!csv.empty()) emit(csv, metrics_csv_header() + metrics_csv_row(input, m));
      if (!bc_csv.empty()) emit(bc_csv, betweenness_csv(m.betweenness));
      return 0;
    }

    if (*compare_cmd) {
      auto orig = load_edge_list(input);
      auto anon = load_edge_list(anonymized);
      auto changes = change_report(orig.graph, anon.graph);
      auto opts = mflags.options(seed);
      auto m_orig = compute_metrics(orig.graph, opts);
      auto m_anon = compute_metrics(anon.graph, opts);
      m_anon.changes = changes;
      json j = {{"original", to_json(m_orig)},
                {"anonymized", to_json(m_anon)},
                {"changes", to_json(changes)}};
      emit(report, dump(j));
      if (!csv.empty())
        emit(csv, metrics_csv_header() + metrics_csv_row(input, m_orig) +
                      metrics_csv_row(anonymized, m_anon));
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
