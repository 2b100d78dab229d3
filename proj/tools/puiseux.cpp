#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "puiseux/classify.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/kernels.hpp"
#include "puiseux/seriesval.hpp"
#include "puiseux/suite.hpp"

using namespace puiseux;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitRefuted = 2;
constexpr int kExitMismatch = 3;

const char* kSeriesGrammar = R"G(Grammar (whitespace ignored):
  series := ["+"|"-"] term (("+"|"-") term)*
  term   := coeff "*" mono | coeff | mono
  mono   := "T" ["^" exp]
  exp    := digits | "(" ["-"] digits ["/" digits] ")"
  coeff  := digits ["/" digits]
Examples: "T^(1/2) + T", "3*T^(-2) + T^(1/3)", "5/2*T^3 - T")G";

struct Common {
  std::size_t window = 50;
  std::string format = "json";
  bool timing = false;
  std::string isa = "auto";
};

void emit(const Common& c, const std::string& command, const json& inputs, const json& result, std::size_t window,
          std::chrono::steady_clock::time_point start, const std::string& text = {}) {
  if (c.format == "text") {
    std::cout << text;
    if (c.timing) {
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::cout << "elapsed_ms: " << ms << "\n";
    }
    return;
  }
  json report = {{"command", command}, {"inputs", inputs}, {"result", result}, {"window", window}};
  if (c.timing) {
    report["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  std::cout << report.dump(2) << "\n";
}

json parse_params(const std::vector<std::string>& kv) {
  json params = json::object();
  for (const auto& item : kv) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("parameter must look like key=value: " + item);
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    auto parsed = json::parse(value, nullptr, false);
    params[key] = parsed.is_discarded() ? json(value) : parsed;
  }
  return params;
}

std::vector<PosRat> parse_rat_list(const std::string& text) {
  std::vector<PosRat> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(PosRat::parse(item));
    } catch (const DomainError& e) {
      throw ParseError(std::string(e.what()) + ": " + item);
    }
  }
  if (out.empty()) throw ParseError("empty generator list");
  return out;
}

std::string classification_text(const ClassificationResult& r, const Presentation& pres) {
  std::ostringstream os;
  os << "label: " << pres.label() << "\n";
  os << "verdict: " << verdict_name(r.verdict) << "\n";
  if (r.certificate) {
    os << "theorem: " << cert_name(r.certificate->kind) << "\n";
    os << "conditional on declarations: " << (r.certificate->conditional() ? "yes" : "no") << "\n";
    if (r.certificate->witnesses.contains("frobenius")) {
      os << "frobenius: " << r.certificate->witnesses["frobenius"].get<std::string>() << "\n";
    }
  }
  os << "window: " << r.window << "\n";
  os << "atoms: " << r.atoms.to_json().dump() << "\n";
  for (const auto& a : r.window_atoms) {
    os << "  r_" << a.index << " = " << a.term << ": " << atom_kind_name(a.status.kind);
    if (!a.status.certificate.empty()) os << " (" << a.status.certificate << ")";
    if (a.status.kind == AtomStatus::Kind::NotAtom) {
      os << " " << a.status.witness.str(a.term, [&](std::size_t k) { return pres.term(k); });
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Puiseux monoid toolkit: classification, atoms, membership, Frobenius numbers"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--isa", common.isa, "kernel instruction set: auto, scalar, avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto add_common = [&](CLI::App* sub, bool with_window = true) {
    if (with_window) sub->add_option("--window", common.window, "window length N");
    sub->add_option("--format", common.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--timing", common.timing, "report elapsed time");
  };

  std::string file;
  std::size_t probe = 1;
  std::uint64_t dp_capacity = kDefaultDpCapacity;
  auto* cmd_classify = app.add_subcommand("classify", "classify a presentation file");
  cmd_classify->add_option("file", file, "presentation JSON")->required();
  cmd_classify->add_option("--probe", probe, "index N0 used by the divisor-chain criterion");
  cmd_classify->add_option("--dp-capacity", dp_capacity, "largest DP table for window membership");
  add_common(cmd_classify);

  std::string only;
  auto* cmd_suite = app.add_subcommand("paper-suite", "reproduce every bundled catalog example");
  cmd_suite->add_option("--only", only, "run one group; exactly_m_atoms runs the m-atom grid");

  std::string q_text, gens_text;
  auto* cmd_member = app.add_subcommand("member", "membership of q in the window monoid");
  cmd_member->add_option("q", q_text, "rational a/b")->required();
  auto* member_src = cmd_member->add_option_group("source");
  member_src->add_option("--file", file, "presentation JSON");
  member_src->add_option("--gens", gens_text, "comma separated generators");
  member_src->require_option(1);
  cmd_member->add_option("--dp-capacity", dp_capacity, "largest DP table");
  add_common(cmd_member);

  auto* cmd_atoms = app.add_subcommand("atoms", "atom status of every window term");
  cmd_atoms->add_option("file", file, "presentation JSON")->required();
  add_common(cmd_atoms);

  std::vector<std::string> frob_gens;
  auto* cmd_frob = app.add_subcommand("frobenius", "Frobenius number of a numerical semigroup");
  cmd_frob->add_option("gens", frob_gens, "generators")->required();
  add_common(cmd_frob, false);

  std::string family_name;
  std::vector<std::string> family_params;
  std::string out_file;
  auto* cmd_family = app.add_subcommand("family", "materialize a catalog family");
  cmd_family->add_option("name", family_name, "family name")->required();
  cmd_family->add_option("--params", family_params, "key=value pairs");
  cmd_family->add_option("--out", out_file, "write the presentation document here");
  add_common(cmd_family);

  std::string series_text;
  std::vector<std::string> image_list;
  auto* cmd_series = app.add_subcommand("series-val", std::string("valuation of a Puiseux series\n") + kSeriesGrammar);
  cmd_series->add_option("expr", series_text, "series expression")->required();
  cmd_series->add_option("--image", image_list, "further series; report the generated monoid");
  add_common(cmd_series, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }
  kernels::set_preferred_isa(common.isa == "scalar" ? kernels::Isa::Scalar
                             : common.isa == "avx2" ? kernels::Isa::Avx2
                                                    : kernels::Isa::Auto);
  const auto start = std::chrono::steady_clock::now();

  try {
    if (*cmd_classify) {
      auto pres = load(file);
      ClassifyOptions opts{probe, dp_capacity};
      auto r = classify(pres, common.window, opts);
      emit(common, "classify", {{"file", file}, {"window", common.window}, {"probe", probe}}, r.to_json(pres), r.window,
           start, classification_text(r, pres));
      return kExitOk;
    }
    if (*cmd_suite) {
      std::vector<SuiteCase> cases;
      if (only.empty()) {
        cases = default_catalog();
      } else if (only == "exactly_m_atoms") {
        cases = m_atom_grid();
      } else {
        for (auto& c : default_catalog()) {
          if (c.id == only) cases.push_back(c);
        }
        if (cases.empty()) throw ParseError("no catalog example named " + only);
      }
      std::vector<SuiteRow> rows;
      int code = run_suite(cases, rows);
      print_suite_table(std::cout, rows);
      for (const auto& r : rows) {
        if (!r.match) std::cerr << "mismatch: " << r.id << "\n";
      }
      return code == 0 ? kExitOk : kExitMismatch;
    }
    if (*cmd_member) {
      const PosRat q = PosRat::parse(q_text);
      std::vector<PosRat> gens;
      std::function<PosRat(std::size_t)> term;
      json inputs = {{"q", q.str()}};
      if (!gens_text.empty()) {
        gens = parse_rat_list(gens_text);
        inputs["gens"] = gens_text;
      } else {
        auto pres = load(file);
        gens = pres.window(common.window);
        inputs["file"] = file;
      }
      auto m = member_in_window(q, gens, dp_capacity);
      json result = {{"verdict", member_verdict_name(m.verdict)}, {"method", m.method}};
      std::string text = std::string(member_verdict_name(m.verdict)) + "\n";
      if (m.verdict == MemberVerdict::Yes) {
        result["witness"] = m.witness.to_json();
        text += m.witness.str(q, [&](std::size_t k) { return gens[k - 1]; }) + "\n";
      }
      emit(common, "member", inputs, result, gens.size(), start, text);
      return kExitOk;
    }
    if (*cmd_atoms) {
      auto pres = load(file);
      check_flag_consistency(pres, common.window);
      auto wa = atoms_in_window(pres, common.window);
      json list = json::array();
      std::ostringstream text;
      for (const auto& a : wa) {
        list.push_back(to_json(a.status, a.term, pres));
        text << "r_" << a.index << " = " << a.term << ": " << atom_kind_name(a.status.kind) << "\n";
      }
      emit(common, "atoms", {{"file", file}, {"window", common.window}}, list, wa.size(), start, text.str());
      return kExitOk;
    }
    if (*cmd_frob) {
      std::vector<BigInt> g;
      for (const auto& s : frob_gens) g.push_back(parse_bigint(s));
      NumericalSemigroup s(g);
      auto f = frobenius(s);
      auto mins = minimal_generators(s);
      json mj = json::array();
      for (const auto& m : mins) mj.push_back(to_string(m));
      emit(common, "frobenius", {{"gens", frob_gens}}, {{"frobenius", to_string(f)}, {"minimal_generators", mj}}, 0,
           start, to_string(f) + "\n");
      return kExitOk;
    }
    if (*cmd_family) {
      auto pres = make_family(family_name, parse_params(family_params));
      if (!out_file.empty()) save(pres, out_file);
      const auto w = pres.window(pres.effective_window(common.window));
      json doc = to_json(pres);
      doc["window_terms"] = json::array();
      for (const auto& t : w) doc["window_terms"].push_back(t.str());
      emit(common, "family", {{"name", family_name}, {"params", parse_params(family_params)}}, doc, w.size(), start,
           rat_list_str(w) + "\n");
      return kExitOk;
    }
    if (*cmd_series) {
      auto s = parse_series(series_text);
      auto v = val_p_series(s);
      auto vstr = v ? (v->get_den() == 1 ? v->get_num().get_str() : v->get_str()) : std::string("inf");
      json result = {{"canonical", s.str()}, {"valuation", vstr}, {"ramification", to_string(s.ramification())}};
      std::string text = s.str() + "\nval = " + vstr + "\n";
      if (!image_list.empty()) {
        std::vector<PuiseuxSeries> all{s};
        for (const auto& e : image_list) all.push_back(parse_series(e));
        auto img = monoid_image(all);
        result["image"] = to_json(img);
        text += "image: " + rat_list_str(img.stream().terms) + "\n";
      }
      emit(common, "series-val", {{"expr", series_text}, {"image", image_list}}, result, 0, start, text);
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error";
    if (e.line) std::cerr << " at line " << e.line;
    if (!e.field.empty()) std::cerr << " in " << e.field;
    if (e.position) std::cerr << " at position " << e.position;
    std::cerr << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const FlagConflictError& e) {
    std::cerr << "flag conflict: " << e.what() << "\n";
    return kExitRefuted;
  } catch (const FlagRefutedError& e) {
    std::cerr << "flag refuted: " << e.what() << "\n";
    return kExitRefuted;
  } catch (const InsufficientWindow& e) {
    std::cerr << "insufficient window: " << e.what() << " (try --window " << e.suggested_window << ")\n";
    return kExitParse;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
