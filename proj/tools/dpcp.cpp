// Copyright 2026 The dpcp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dpcp command-line front end.
//
// Exit codes: 0 accept/success, 1 reject, 2 malformed input, 3 over budget,
// 4 usage error.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpcp/dpcp.hpp"

namespace {

using namespace dpcp;

enum Exit { kOk = 0, kReject = 1, kFormat = 2, kCapacity = 3, kUsage = 4 };

Instance load_graph(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_graph(in);
}

LanguageId language_arg(const std::string& s) {
  const auto lang = parse_language(s);
  if (!lang) throw UsageError("unknown language '" + s + "'");
  return *lang;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

std::string membership_line(const Instance& inst, LanguageId lang) {
  std::string verdict;
  try {
    verdict = is_member(inst, lang) ? "yes" : "no";
  } catch (const FormatError&) {
    verdict = "no";
  }
  std::string name(to_string(lang));
  name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  return name + ": " + verdict + "\n";
}

// generate -----------------------------------------------------------------

struct GenerateArgs {
  std::string kind;
  std::vector<std::string> args;
  std::string leader;
  std::string span;
  std::string nonbipartite;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  std::string desc = a.kind;
  for (const auto& x : a.args) desc += ":" + x;
  if (!a.leader.empty()) desc += "/leader=" + a.leader;
  if (!a.span.empty()) desc += "/span=" + a.span;
  if (!a.nonbipartite.empty()) desc += "/nonbip=" + a.nonbipartite;
  const Instance inst = generate(desc, a.seed);
  std::ostringstream graph;
  write_graph(graph, inst);
  std::string summary;
  for (LanguageId l : {LanguageId::kNonbipartite, LanguageId::kLeader, LanguageId::kSpan}) {
    summary += membership_line(inst, l);
  }
  if (a.out.empty() || a.out == "-") {
    std::cout << graph.str();
    std::cerr << summary;
  } else {
    write_file_atomic(a.out, graph.str());
    std::cout << summary;
  }
  return kOk;
}

// prove / verify / certify ---------------------------------------------------

int cmd_prove(const std::string& graph, const std::string& language, const std::string& out) {
  const Instance inst = load_graph(graph);
  const LanguageId lang = language_arg(language);
  const MultiProof proof = honest_proof(inst, lang);
  std::ostringstream bytes;
  write_proof(bytes, proof, lang);
  if (out.empty() || out == "-") throw UsageError("prove needs --out for the binary proof");
  write_file_atomic(out, bytes.str());
  std::cout << "proof length: " << proof.total_bits() << " bits (" << proof.part_count()
            << " part" << (proof.part_count() == 1 ? "" : "s") << " of " << proof.part(0).size()
            << ")\n";
  return kOk;
}

int cmd_verify(const std::string& graph, const std::string& proof_path, unsigned blr,
               unsigned vreps, std::uint64_t seed) {
  const Instance inst = load_graph(graph);
  std::istringstream in(read_file(proof_path));
  const ProofFile pf = read_proof(in);
  const ProtocolConfig cfg{pf.language, blr, vreps};
  RunReport report;
  try {
    report = run_protocol(inst, pf.proof, cfg, seed);
  } catch (const ProtocolError& e) {
    throw FormatError(std::string("malformed proof: ") + e.what());
  }
  std::cout << std::left << std::setw(6) << "node" << std::setw(9) << "verdict" << std::setw(16)
            << "check" << std::setw(9) << "queries"
            << "bits\n";
  for (std::size_t i = 0; i < report.nodes.size(); ++i) {
    const auto& r = report.nodes[i];
    std::cout << std::setw(6) << i << std::setw(9) << (r.accept ? "accept" : "reject")
              << std::setw(16) << (r.accept ? "-" : std::string(to_string(r.failed)))
              << std::setw(9) << r.query_count << r.random_bits_used << '\n';
  }
  std::cout << (report.accept ? "accept" : "reject") << '\n';
  return report.accept ? kOk : kReject;
}

int cmd_certify(const std::string& graph, const std::string& language, unsigned blr,
                unsigned vreps) {
  const Instance inst = load_graph(graph);
  const LanguageId lang = language_arg(language);
  const SoundnessReport rep =
      certify_soundness_exhaustive(inst, lang, ProtocolConfig{lang, blr, vreps});
  std::cout << "proofs enumerated: " << rep.enumerated << '\n'
            << "max acceptance: " << to_fraction_string(*rep.max_acceptance) << " ("
            << to_double(*rep.max_acceptance) << ")\n"
            << "argmax: " << rep.argmax << '\n';
  return kOk;
}

// experiment ----------------------------------------------------------------

int cmd_experiment(const std::string& path, unsigned jobs) {
  std::istringstream in(read_file(path));
  const ExperimentConfig cfg = ExperimentConfig::parse(in);
  const auto cells = run_experiment(cfg, jobs);
  std::ostringstream csv;
  write_csv(csv, cells);
  emit(cfg.output, csv.str());
  if (!cfg.output.empty() && cfg.output != "-") {
    std::cerr << cells.size() << " rows written to " << cfg.output << '\n';
  }
  return kOk;
}

// LCP -------------------------------------------------------------------------

std::string bits_of(const Label& l) {
  std::string s;
  for (unsigned k = l.bits; k-- > 0;) s += ((l.value >> k) & 1) ? '1' : '0';
  return s.empty() ? "-" : s;
}

int cmd_lcp_demo(unsigned bits, std::size_t cycle, std::uint64_t budget) {
  if (cycle < 3) throw UsageError("--cycle must be at least 3");
  const GlueReport r = glue_attack(LocalVerifierKind::kLeaderOnCycles, bits, cycle, budget);
  std::cout << "verifier: leader on cycles, " << bits << "-bit labels (root id "
            << r.format.root_bits << " bits, distance " << r.format.dist_bits << " bits)\n"
            << "accepting labelings: " << r.accepting_a << " (A), " << r.accepting_b << " (B)\n"
            << "search visits: " << r.visits << '\n';
  if (!r.instance) {
    std::cout << "no splice found\n";
    return kOk;
  }
  const auto& fi = *r.instance;
  std::cout << "fooling instance: cycle of " << fi.cycle.size() << " vertices, " << fi.leaders
            << " leaders, window " << fi.window << " (" << fi.from_a << " from A, " << fi.from_b
            << " from B)\n";
  std::cout << "windows with a splice:";
  for (unsigned w : r.windows) std::cout << ' ' << w;
  std::cout << '\n' << std::left << std::setw(6) << "pos" << std::setw(5) << "id" << std::setw(7)
            << "input" << "label\n";
  for (std::size_t k = 0; k < fi.cycle.size(); ++k) {
    std::cout << std::setw(6) << k << std::setw(5) << fi.cycle.ids[k] << std::setw(7)
              << (fi.cycle.inputs[k] ? 1 : 0) << bits_of(fi.cycle.labels[k]) << '\n';
  }
  std::cout << "all nodes accept; leader count " << fi.leaders << " != 1\n";
  return kOk;
}

int cmd_lcp_prove(const std::string& graph, const std::string& language, const std::string& out) {
  const Instance inst = load_graph(graph);
  const LanguageId lang = language_arg(language);
  Labeling l;
  if (lang == LanguageId::kSpan) {
    l = lcp_prove_span(inst);
  } else if (lang == LanguageId::kLeader) {
    l = lcp_leader_scheme(inst);
  } else {
    throw UsageError("no labeling scheme for " + language);
  }
  std::ostringstream text;
  write_labeling(text, l);
  emit(out, text.str());
  if (!out.empty() && out != "-") std::cout << "max label bits: " << l.max_label_bits() << '\n';
  return kOk;
}

int cmd_lcp_verify(const std::string& graph, const std::string& labels,
                   const std::string& language) {
  const Instance inst = load_graph(graph);
  const LanguageId lang = language_arg(language);
  std::istringstream in(read_file(labels));
  const Labeling l = read_labeling(in, inst.size());
  std::vector<bool> nodes;
  if (lang == LanguageId::kSpan) {
    nodes = lcp_verify_span_nodes(inst, l);
  } else if (lang == LanguageId::kLeader) {
    nodes = lcp_verify_leader_nodes(inst, l, identity_ids(inst.size()),
                                    default_label_format(inst.size()));
  } else {
    throw UsageError("no labeling scheme for " + language);
  }
  bool all = true;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::cout << i << ' ' << (nodes[i] ? "accept" : "reject") << '\n';
    all = all && nodes[i];
  }
  std::cout << (all ? "accept" : "reject") << '\n';
  return all ? kOk : kReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed PCP toolkit"};
  app.require_subcommand(1);
  int rc = kOk;
  std::function<int()> action;

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate an instance in the graph text format");
  g->add_option("kind", gen.kind, "cycle|path|complete|star|tree|random-connected")->required();
  g->add_option("args", gen.args, "size, plus edge probability for random-connected")->required();
  g->add_option("--leader", gen.leader, "leader ids (comma list), 'none' or 'random'");
  g->add_option("--span", gen.span, "tree|cycle|two-roots|no-root|non-neighbor");
  g->add_option("--nonbipartite", gen.nonbipartite, "require yes|no");
  g->add_option("--seed", gen.seed, "generator seed");
  g->add_option("--out", gen.out, "output file (default stdout)");
  g->callback([&] { action = [&] { return cmd_generate(gen); }; });

  std::string graph, proof, language, out, config, labels;
  unsigned blr = 1, vreps = 1, jobs = default_jobs();
  std::uint64_t seed = 0;

  auto* p = app.add_subcommand("prove", "Write the honest proof of a yes-instance");
  p->add_option("graph", graph)->required();
  p->add_option("language", language)->required();
  p->add_option("--out", out, "proof file")->required();
  p->callback([&] { action = [&] { return cmd_prove(graph, language, out); }; });

  auto* v = app.add_subcommand("verify", "Run the verifier network on a proof file");
  v->add_option("graph", graph)->required();
  v->add_option("proof", proof)->required();
  v->add_option("--blr-reps", blr)->check(CLI::PositiveNumber);
  v->add_option("--verifier-reps", vreps)->check(CLI::PositiveNumber);
  v->add_option("--seed", seed);
  v->callback([&] { action = [&] { return cmd_verify(graph, proof, blr, vreps, seed); }; });

  auto* c = app.add_subcommand("certify", "Exact maximum acceptance over every proof");
  c->add_option("graph", graph)->required();
  c->add_option("language", language)->required();
  c->add_option("--blr-reps", blr)->check(CLI::PositiveNumber);
  c->add_option("--verifier-reps", vreps)->check(CLI::PositiveNumber);
  c->callback([&] { action = [&] { return cmd_certify(graph, language, blr, vreps); }; });

  auto* e = app.add_subcommand("experiment", "Run a config file and write CSV");
  e->add_option("config", config)->required();
  e->add_option("--jobs", jobs, "worker threads (default DPCP_JOBS or 1)")
      ->check(CLI::PositiveNumber);
  e->callback([&] { action = [&] { return cmd_experiment(config, jobs); }; });

  unsigned bits = 2;
  std::size_t cycle = 4;
  std::uint64_t budget = std::uint64_t{1} << 24;
  auto* d = app.add_subcommand("lcp-demo", "Cycle-gluing attack on short leader labels");
  d->add_option("--bits", bits, "label bits")->required();
  d->add_option("--cycle", cycle, "cycle size")->required();
  d->add_option("--budget", budget, "search budget");
  d->callback([&] { action = [&] { return cmd_lcp_demo(bits, cycle, budget); }; });

  auto* lp = app.add_subcommand("lcp-prove", "Write a proof labeling (span or leader)");
  lp->add_option("graph", graph)->required();
  lp->add_option("language", language)->required();
  lp->add_option("--out", out, "labeling file (default stdout)");
  lp->callback([&] { action = [&] { return cmd_lcp_prove(graph, language, out); }; });

  auto* lv = app.add_subcommand("lcp-verify", "Check a proof labeling locally");
  lv->add_option("graph", graph)->required();
  lv->add_option("labels", labels)->required();
  lv->add_option("language", language)->required();
  lv->callback([&] { action = [&] { return cmd_lcp_verify(graph, labels, language); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    rc = action();
  } catch (const WitnessError& err) {
    std::cerr << "error: " << err.what() << '\n';
    rc = kReject;
  } catch (const CapacityError& err) {
    std::cerr << "error: " << err.what() << '\n';
    rc = kCapacity;
  } catch (const FormatError& err) {
    std::cerr << "error: " << err.what() << '\n';
    rc = kFormat;
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << '\n';
    rc = kFormat;
  } catch (const StrategyError& err) {
    std::cerr << "error: " << err.what() << '\n';
    rc = kFormat;
  } catch (const UsageError& err) {
    std::cerr << "error: " << err.what() << '\n';
    rc = kUsage;
  } catch (const GenerationError& err) {
    std::cerr << "error: " << err.what() << '\n';
    rc = kUsage;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    rc = kFormat;
  } catch (const std::filesystem::filesystem_error& err) {
    std::cerr << "error: " << err.what() << '\n';
    rc = kFormat;
  }
  return rc;
}
