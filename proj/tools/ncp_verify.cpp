// Command-line front end: enumeration dumps, per-chain checks, the full n=7
// pipeline with fixture alignment, exclusion validation and SVG rendering.
//
// Exit codes: 0 ok, 1 theorem check failed, 2 fixture misalignment, 3 usage error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ncp/apartments.hpp"
#include "ncp/enumeration.hpp"
#include "ncp/pipeline.hpp"
#include "ncp/render.hpp"

#ifndef NCP_FIXTURE_PATH
#define NCP_FIXTURE_PATH "data/theorem5_fixtures.json"
#endif

namespace {

constexpr int kOk = 0;
constexpr int kTheoremFailed = 1;
constexpr int kMisaligned = 2;
constexpr int kUsage = 3;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int run_enumerate(const std::string& what, int n, bool count_only) {
  std::uint64_t count = 0;
  auto emit = [&](const std::string& line) {
    ++count;
    if (!count_only) std::cout << line << "\n";
  };
  if (what == "partitions") {
    for (const ncp::Partition& p : ncp::enumerate_ncp(n)) emit(p.str().empty() ? "0" : p.str());
  } else if (what == "chains") {
    for (const ncp::Chain& c : ncp::enumerate_chains(n)) emit(c.str());
  } else if (what == "maxchains") {
    ncp::for_each_maximal_chain(n, [&](std::span<const ncp::Partition> members) {
      std::string line;
      for (const ncp::Partition& p : members) line += (line.empty() ? "" : "<") + p.str();
      emit(line);
    });
  } else {
    for (const ncp::NcSpanningTree& t : ncp::enumerate_nc_spanning_trees(n)) emit(t.str());
  }
  std::cout << "total " << count << "\n";
  return kOk;
}

int run_theorem(int n, const std::string& json_path, const std::string& csv_path, const std::string& fixture_path,
                bool with_fixtures) {
  ncp::PipelineReport report = ncp::run_theorem5(n);
  std::optional<ncp::AlignmentReport> alignment;
  if (with_fixtures) {
    const ncp::FixtureSet fixtures = ncp::load_fixtures(fixture_path);
    if (fixtures.n == n) alignment = ncp::compare_fixtures(report, fixtures);
  }
  std::cout << ncp::report_text(report);
  if (alignment) std::cout << ncp::alignment_text(*alignment);
  if (!json_path.empty()) write_file(json_path, ncp::report_json(report, alignment ? &*alignment : nullptr));
  if (!csv_path.empty()) write_file(csv_path, ncp::report_csv(report));
  if (!report.verified()) return kTheoremFailed;
  if (alignment && !alignment->aligned()) return kMisaligned;
  return kOk;
}

int run_lemma3(int n, bool strict) {
  const auto convention = strict ? ncp::InclusionConvention::Strict : ncp::InclusionConvention::NonStrict;
  const ncp::Lemma3Validation v = ncp::validate_lemma3(n, convention);
  std::cout << "chains                  " << v.chains << "\n"
            << "pattern hits            " << v.hits << "\n"
            << "compatible (F, C) pairs " << v.compatible_pairs << "\n"
            << "exclusion checks        " << v.checks << "\n"
            << "violations              " << v.violations << "\n"
            << "certificates            " << v.certificates << "\n"
            << "unsound certificates    " << v.unsound_certificates << "\n"
            << "replay failures         " << v.replay_failures << "\n";
  for (const std::string& e : v.examples) std::cout << "  " << e << "\n";
  const bool ok = v.violations == 0 && v.unsound_certificates == 0 && v.replay_failures == 0;
  std::cout << (ok ? "LEMMA 3 SOUND" : "LEMMA 3 VIOLATED") << "\n";
  return ok ? kOk : kTheoremFailed;
}

int run_render(const std::string& input, int n, const std::string& out_path) {
  std::string svg;
  if (input.find('-') != std::string::npos) {
    svg = ncp::render_svg(ncp::parse_tree(input, n));
  } else if (input.find('<') != std::string::npos) {
    svg = ncp::render_svg(ncp::parse_chain(input, n));
  } else {
    svg = ncp::render_svg(ncp::parse_noncrossing(input, n));
  }
  write_file(out_path, svg);
  return kOk;
}

int run_fixtures(bool compare, const std::string& fixture_path) {
  const ncp::FixtureSet fixtures = ncp::load_fixtures(fixture_path);
  std::cout << fixtures.items.size() << " items, " << fixtures.case_chains().size() << " chains, "
            << fixtures.cases.size() << " cases\n";
  if (!compare) return kOk;
  ncp::PipelineReport report = ncp::run_theorem5(fixtures.n);
  const ncp::AlignmentReport alignment = ncp::compare_fixtures(report, fixtures);
  std::cout << ncp::alignment_text(alignment);
  return alignment.aligned() ? kOk : kMisaligned;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for chains of non-crossing partitions"};
  app.require_subcommand(1);
  std::string fixture_path = NCP_FIXTURE_PATH;
  app.add_option("--fixtures", fixture_path, "Fixture file");

  auto* enumerate = app.add_subcommand("enumerate", "List partitions, chains, maximal chains or trees");
  std::string what;
  int n = 7;
  bool count_only = false;
  enumerate->add_option("--what", what)->required()->check(CLI::IsMember({"partitions", "chains", "maxchains", "trees"}));
  enumerate->add_option("--n", n)->check(CLI::Range(1, 9));
  enumerate->add_flag("--count", count_only, "Print only the total");

  auto* check = app.add_subcommand("check", "Conditions I-IV for one chain");
  std::string chain_text;
  bool dual = false, dominant = false, strict = false;
  check->add_option("--chain", chain_text)->required();
  check->add_option("--n", n)->check(CLI::Range(3, 7));
  check->add_flag("--dual", dual);
  check->add_flag("--dominant", dominant);
  check->add_flag("--strict-patterns", strict);

  auto* theorem = app.add_subcommand("theorem5", "Exhaustive pipeline");
  std::string json_path, csv_path;
  bool no_fixtures = false;
  theorem->add_option("--n", n)->check(CLI::Range(3, 7));
  theorem->add_option("--json", json_path);
  theorem->add_option("--csv", csv_path);
  theorem->add_flag("--no-fixtures", no_fixtures);

  auto* lemma3 = app.add_subcommand("validate-lemma3", "Check pattern exclusions against every compatible maximal chain");
  lemma3->add_option("--n", n)->check(CLI::Range(3, 7));
  lemma3->add_flag("--strict-patterns", strict);

  auto* render = app.add_subcommand("render", "SVG chord diagram of a partition, chain or tree");
  std::string input, out_path;
  render->add_option("--input", input)->required();
  render->add_option("--out", out_path)->required();
  render->add_option("--n", n)->check(CLI::Range(1, 9));

  auto* fixtures = app.add_subcommand("fixtures", "Load the fixture corpus");
  bool compare = false;
  fixtures->add_flag("--compare", compare, "Align fixtures with the exhaustive pipeline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*enumerate) {
      if (what != "partitions" && n < ncp::kMinChainN) throw std::invalid_argument("chains need n >= 3");
      if (what == "chains" && n > 7) throw std::invalid_argument("chain enumeration needs n <= 7");
      return run_enumerate(what, n, count_only);
    }
    if (*check) {
      ncp::CheckOptions options;
      options.dual = dual;
      options.dominant = dominant;
      options.convention = strict ? ncp::InclusionConvention::Strict : ncp::InclusionConvention::NonStrict;
      std::cout << ncp::check_chain_text(ncp::parse_chain(chain_text, n), options);
      return kOk;
    }
    if (*theorem) return run_theorem(n, json_path, csv_path, fixture_path, !no_fixtures);
    if (*lemma3) return run_lemma3(n, strict);
    if (*render) return run_render(input, n, out_path);
    if (*fixtures) return run_fixtures(compare, fixture_path);
  } catch (const ncp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ncp::FixtureError& e) {
    std::cerr << e.what() << "\n";
    return kMisaligned;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
