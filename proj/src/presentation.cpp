#include "puiseux/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "puiseux/errors.hpp"

namespace puiseux {

BigInt Factorization::parts() const {
  BigInt total = 0;
  for (const auto& [i, c] : coeffs) total += c;
  return total;
}

PosRat Factorization::value(const std::function<PosRat(std::size_t)>& term) const {
  PosRat sum;
  for (const auto& [i, c] : coeffs) sum += PosRat(c) * term(i);
  return sum;
}

std::string Factorization::str(const PosRat& q, const std::function<PosRat(std::size_t)>& term) const {
  std::string out = q.str() + " = ";
  bool first = true;
  for (const auto& [i, c] : coeffs) {
    if (!first) out += " + ";
    first = false;
    out += to_string(c) + "·(" + term(i).str() + ")";
  }
  if (first) out += "0";
  return out;
}

json Factorization::to_json() const {
  json j = json::object();
  for (const auto& [i, c] : coeffs) j[std::to_string(i)] = to_string(c);
  return j;
}

namespace {

constexpr std::pair<FlagKind, const char*> kFlagNames[] = {
    {FlagKind::DenominatorsBounded, "denominators_bounded"},
    {FlagKind::DenominatorChainDivides, "denominator_chain_divides"},
    {FlagKind::DenominatorsUnbounded, "denominators_unbounded"},
    {FlagKind::NumeratorsBounded, "numerators_bounded"},
    {FlagKind::SpectrumEmpty, "spectrum_empty"},
    {FlagKind::InfimumPositive, "infimum_positive"},
    {FlagKind::OverPrimes, "over_primes"},
    {FlagKind::EventuallyIncreasing, "eventually_increasing"},
};

json bigint_json(const BigInt& v) {
  if (fits_int64(v)) return v.get_si();
  return to_string(v);
}

BigInt bigint_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return parse_bigint(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(e.what(), 0, field);
    }
  }
  throw ParseError("expected an integer", 0, field);
}

PosRat rat_from_json(const json& j, const std::string& field) {
  try {
    if (j.is_number_unsigned() || j.is_number_integer()) {
      auto v = j.get<std::int64_t>();
      return PosRat(static_cast<long long>(v));
    }
    if (j.is_string()) return PosRat::parse(j.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(e.what(), 0, field);
  }
  throw ParseError("expected a rational \"a/b\"", 0, field);
}

}  // namespace

const char* flag_name(FlagKind kind) {
  for (const auto& [k, n] : kFlagNames) {
    if (k == kind) return n;
  }
  return "?";
}

std::optional<FlagKind> flag_from_name(std::string_view name) {
  for (const auto& [k, n] : kFlagNames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

std::string StructuralFlag::str() const {
  std::string out = flag_name(kind);
  if (bound) out += "(" + to_string(*bound) + ")";
  if (lower_bound) out += "(" + lower_bound->str() + ")";
  if (kind == FlagKind::OverPrimes) {
    out += "({";
    for (std::size_t i = 0; i < primes.size(); ++i) out += (i ? "," : "") + std::to_string(primes[i]);
    out += "})";
  }
  out += provenance.declared ? " [declared]" : " [verified on window " + std::to_string(provenance.window) + "]";
  return out;
}

json StructuralFlag::to_json() const {
  json args = json::object();
  if (bound) args[kind == FlagKind::NumeratorsBounded ? "B" : "D"] = bigint_json(*bound);
  if (lower_bound) args["lower_bound"] = lower_bound->str();
  if (kind == FlagKind::OverPrimes) args["P"] = primes;
  json prov = provenance.declared ? json("declared") : json{{"verified_on_window", provenance.window}};
  return {{"property", flag_name(kind)}, {"args", args}, {"provenance", prov}};
}

StructuralFlag StructuralFlag::from_json(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("property") || !j.at("property").is_string()) {
    throw ParseError("flag needs a \"property\" string", 0, field);
  }
  auto kind = flag_from_name(j.at("property").get<std::string>());
  if (!kind) throw ParseError("unknown flag property " + j.at("property").dump(), 0, field + "/property");
  StructuralFlag f = simple(*kind);
  const json args = j.value("args", json::object());
  if (!args.is_object()) throw ParseError("args must be an object", 0, field + "/args");
  switch (*kind) {
    case FlagKind::NumeratorsBounded:
      if (!args.contains("B")) throw ParseError("numerators_bounded needs B", 0, field + "/args");
      f.bound = bigint_from_json(args.at("B"), field + "/args/B");
      if (*f.bound < 1) throw ParseError("B must be positive", 0, field + "/args/B");
      break;
    case FlagKind::DenominatorsBounded:
      if (args.contains("D")) f.bound = bigint_from_json(args.at("D"), field + "/args/D");
      break;
    case FlagKind::InfimumPositive:
      if (!args.contains("lower_bound")) throw ParseError("infimum_positive needs lower_bound", 0, field + "/args");
      f.lower_bound = rat_from_json(args.at("lower_bound"), field + "/args/lower_bound");
      if (f.lower_bound->is_zero()) throw ParseError("lower_bound must be positive", 0, field + "/args/lower_bound");
      break;
    case FlagKind::OverPrimes: {
      if (!args.contains("P") || !args.at("P").is_array()) {
        throw ParseError("over_primes needs a list P", 0, field + "/args");
      }
      for (const auto& p : args.at("P")) {
        if (!p.is_number_integer() || p.get<std::int64_t>() < 2 || !is_prime(p.get<std::uint64_t>())) {
          throw ParseError("P entries must be primes", 0, field + "/args/P");
        }
        f.primes.push_back(p.get<std::uint64_t>());
      }
      std::sort(f.primes.begin(), f.primes.end());
      f.primes.erase(std::unique(f.primes.begin(), f.primes.end()), f.primes.end());
      break;
    }
    default:
      break;
  }
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    if (p == "declared") {
      f.provenance = {};
    } else if (p.is_object() && p.contains("verified_on_window") && p.at("verified_on_window").is_number_unsigned()) {
      f.provenance = Provenance::verified_on(p.at("verified_on_window").get<std::size_t>());
    } else {
      throw ParseError("provenance must be \"declared\" or {\"verified_on_window\": N}", 0, field + "/provenance");
    }
  }
  return f;
}

// ---------------------------------------------------------------------------

Presentation Presentation::finite(std::vector<PosRat> terms, std::string label) {
  if (terms.empty()) throw DomainError("finite presentation needs a term");
  for (const auto& t : terms) {
    if (t.is_zero()) throw DomainError("generators must be positive");
  }
  Presentation p;
  p.label_ = std::move(label);
  p.stream_.kind = GeneratorStream::Kind::Finite;
  p.stream_.terms = std::move(terms);
  return p;
}

Presentation Presentation::from_family(std::shared_ptr<const Family> family, std::string label) {
  Presentation p;
  p.label_ = label.empty() ? family->name() : std::move(label);
  p.stream_.kind = GeneratorStream::Kind::Family;
  p.stream_.family = std::move(family);
  return p;
}

std::size_t Presentation::length() const {
  return is_finite() ? stream_.terms.size() : SIZE_MAX;
}

PosRat Presentation::term(std::size_t n) const {
  if (n == 0) throw DomainError("stream indices are 1-based");
  if (is_finite()) {
    if (n > stream_.terms.size()) throw DomainError("index beyond finite stream");
    return stream_.terms[n - 1];
  }
  PosRat t = stream_.family->term(n);
  return scale_ == PosRat(1) ? t : t * scale_;
}

std::size_t Presentation::effective_window(std::size_t n) const {
  if (is_finite()) return std::min(n, stream_.terms.size());
  return std::min(n, stream_.family->window_cap());
}

std::vector<PosRat> Presentation::window(std::size_t n) const {
  std::vector<PosRat> out;
  const std::size_t len = effective_window(n);
  out.reserve(len);
  for (std::size_t i = 1; i <= len; ++i) out.push_back(term(i));
  return out;
}

const StructuralFlag* Presentation::find(FlagKind kind) const {
  for (const auto& f : flags_) {
    if (f.kind == kind) return &f;
  }
  return nullptr;
}

Presentation Presentation::with_flags(std::vector<StructuralFlag> flags) const {
  Presentation p = *this;
  p.flags_ = std::move(flags);
  return p;
}

Presentation Presentation::with_label(std::string label) const {
  Presentation p = *this;
  p.label_ = std::move(label);
  return p;
}

Presentation Presentation::scaled(const PosRat& c) const {
  if (c.is_zero()) throw DomainError("scale must be positive");
  Presentation p = *this;
  if (is_finite()) {
    for (auto& t : p.stream_.terms) t = t * c;
    // Numerator and denominator bounds do not survive scaling.
    std::vector<StructuralFlag> kept;
    for (const auto& f : flags_) {
      if (f.kind == FlagKind::DenominatorsBounded && !f.bound) kept.push_back(f);
    }
    p.flags_ = std::move(kept);
  } else {
    p.scale_ = scale_ * c;
  }
  return p;
}

Presentation Presentation::unscaled() const {
  Presentation p = *this;
  p.scale_ = PosRat(1);
  return p;
}

Presentation make_family(const std::string& name, const json& params) {
  auto fam = make_family_stream(name, params);
  auto flags = fam->proven_flags();
  return Presentation::from_family(std::move(fam)).with_flags(std::move(flags));
}

std::vector<PosRat> window(const Presentation& pres, std::size_t n) { return pres.window(n); }

std::string rat_list_str(const std::vector<PosRat>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out + "]";
}

// ---------------------------------------------------------------------------

const char* flag_status_name(FlagStatus s) {
  switch (s) {
    case FlagStatus::Confirmed: return "confirmed";
    case FlagStatus::Refuted: return "refuted";
    case FlagStatus::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

FlagCheck check_one(const StructuralFlag& f, const std::vector<PosRat>& w, bool finite) {
  const std::size_t n = w.size();
  auto idx = [](std::size_t i) { return std::to_string(i + 1); };
  switch (f.kind) {
    case FlagKind::DenominatorsBounded:
      if (f.bound) {
        for (std::size_t i = 0; i < n; ++i) {
          if (w[i].den() > *f.bound) {
            return {f, FlagStatus::Refuted, "d(r_" + idx(i) + ") = " + to_string(w[i].den()) + " exceeds D"};
          }
        }
        return {f, FlagStatus::Confirmed, finite ? "finite list" : "consistent on window"};
      }
      return finite ? FlagCheck{f, FlagStatus::Confirmed, "finite list"}
                    : FlagCheck{f, FlagStatus::Undetermined, "no bound D to check"};
    case FlagKind::DenominatorChainDivides:
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!mpz_divisible_p(w[i + 1].den().get_mpz_t(), w[i].den().get_mpz_t())) {
          return {f, FlagStatus::Refuted,
                  "d(r_" + idx(i) + ") = " + to_string(w[i].den()) + " does not divide d(r_" + idx(i + 1) +
                      ") = " + to_string(w[i + 1].den())};
        }
      }
      return {f, FlagStatus::Confirmed, finite ? "finite list" : "consistent on window"};
    case FlagKind::DenominatorsUnbounded: {
      if (finite) return {f, FlagStatus::Refuted, "a finite list has bounded denominators"};
      BigInt early = 0, late = 0;
      for (std::size_t i = 0; i < n; ++i) {
        BigInt& slot = i < n / 2 ? early : late;
        if (w[i].den() > slot) slot = w[i].den();
      }
      if (n >= 2 && late > early) return {f, FlagStatus::Confirmed, "denominators still growing on window"};
      return {f, FlagStatus::Undetermined, "no growth seen on window"};
    }
    case FlagKind::NumeratorsBounded:
      for (std::size_t i = 0; i < n; ++i) {
        if (w[i].num() > *f.bound) {
          return {f, FlagStatus::Refuted, "n(r_" + idx(i) + ") = " + to_string(w[i].num()) + " exceeds B"};
        }
      }
      return {f, FlagStatus::Confirmed, finite ? "finite list" : "consistent on window"};
    case FlagKind::SpectrumEmpty: {
      std::vector<std::uint64_t> nums;
      std::uint64_t bound = 1;
      for (const auto& r : w) {
        if (!r.num().fits_ulong_p()) return {f, FlagStatus::Undetermined, "numerators too large to factor"};
        nums.push_back(r.num().get_ui());
        bound = std::max(bound, nums.back());
      }
      auto rep = sequence_spectrum(nums, bound);
      if (rep.verdict == SpectrumVerdict::EmptyOnWindow) {
        return {f, FlagStatus::Confirmed, "no prime divides the final half of the window"};
      }
      std::string ps;
      for (auto p : rep.stabilizers_on_window) ps += (ps.empty() ? "" : ",") + std::to_string(p);
      return {f, FlagStatus::Undetermined, "primes {" + ps + "} divide every late window term"};
    }
    case FlagKind::InfimumPositive:
      for (std::size_t i = 0; i < n; ++i) {
        if (w[i] < *f.lower_bound) {
          return {f, FlagStatus::Refuted, "r_" + idx(i) + " = " + w[i].str() + " is below the lower bound"};
        }
      }
      return {f, FlagStatus::Confirmed, finite ? "finite list" : "consistent on window"};
    case FlagKind::OverPrimes:
      for (std::size_t i = 0; i < n; ++i) {
        auto fac = factor(w[i].den());
        if (!fac) return {f, FlagStatus::Undetermined, "denominator of r_" + idx(i) + " not factored"};
        for (auto [p, e] : *fac) {
          if (!std::binary_search(f.primes.begin(), f.primes.end(), p)) {
            return {f, FlagStatus::Refuted, std::to_string(p) + " divides d(r_" + idx(i) + ")"};
          }
        }
      }
      return {f, FlagStatus::Confirmed, finite ? "finite list" : "consistent on window"};
    case FlagKind::EventuallyIncreasing: {
      for (std::size_t i = n / 2; i + 1 < n; ++i) {
        if (!(w[i] < w[i + 1])) return {f, FlagStatus::Undetermined, "final half not increasing"};
      }
      return {f, FlagStatus::Confirmed, "final half increasing"};
    }
  }
  return {f, FlagStatus::Undetermined, ""};
}

}  // namespace

std::vector<FlagCheck> verify_flags(const Presentation& pres, std::size_t n) {
  const auto base = pres.is_finite() ? pres : pres.unscaled();
  const auto w = base.window(n);
  std::vector<FlagCheck> out;
  for (const auto& f : pres.flags()) out.push_back(check_one(f, w, pres.is_finite()));
  return out;
}

// ---------------------------------------------------------------------------

json to_json(const Presentation& pres) {
  json stream;
  if (pres.is_finite()) {
    json terms = json::array();
    for (const auto& t : pres.stream().terms) terms.push_back(t.str());
    stream = {{"kind", "finite"}, {"terms", terms}, {"family", nullptr}};
  } else {
    stream = {{"kind", "family"},
              {"terms", nullptr},
              {"family", {{"name", pres.family()->name()}, {"params", pres.family()->params()}}}};
  }
  json flags = json::array();
  for (const auto& f : pres.flags()) flags.push_back(f.to_json());
  json doc = {{"label", pres.label()}, {"stream", stream}, {"flags", flags}};
  if (!(pres.scale() == PosRat(1))) doc["scale"] = pres.scale().str();
  return doc;
}

Presentation from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("document must be an object", 0, "");
  std::string label;
  if (doc.contains("label")) {
    if (!doc.at("label").is_string()) throw ParseError("label must be a string", 0, "/label");
    label = doc.at("label").get<std::string>();
  }
  if (!doc.contains("stream") || !doc.at("stream").is_object()) {
    throw ParseError("missing stream object", 0, "/stream");
  }
  const auto& stream = doc.at("stream");
  if (!stream.contains("kind") || !stream.at("kind").is_string()) {
    throw ParseError("stream needs a kind", 0, "/stream/kind");
  }
  const auto kind = stream.at("kind").get<std::string>();
  std::vector<StructuralFlag> flags;
  if (doc.contains("flags")) {
    if (!doc.at("flags").is_array()) throw ParseError("flags must be a list", 0, "/flags");
    for (std::size_t i = 0; i < doc.at("flags").size(); ++i) {
      flags.push_back(StructuralFlag::from_json(doc.at("flags")[i], "/flags/" + std::to_string(i)));
    }
  }
  Presentation pres;
  if (kind == "finite") {
    if (!stream.contains("terms") || !stream.at("terms").is_array() || stream.at("terms").empty()) {
      throw ParseError("finite stream needs a nonempty terms list", 0, "/stream/terms");
    }
    std::vector<PosRat> terms;
    for (std::size_t i = 0; i < stream.at("terms").size(); ++i) {
      const std::string field = "/stream/terms/" + std::to_string(i);
      auto r = rat_from_json(stream.at("terms")[i], field);
      if (r.is_zero()) throw ParseError("generators must be positive", 0, field);
      terms.push_back(std::move(r));
    }
    pres = Presentation::finite(std::move(terms), label);
  } else if (kind == "family") {
    if (!stream.contains("family") || !stream.at("family").is_object() ||
        !stream.at("family").contains("name") || !stream.at("family").at("name").is_string()) {
      throw ParseError("family stream needs family.name", 0, "/stream/family");
    }
    const auto& fam = stream.at("family");
    json params = fam.value("params", json::object());
    try {
      pres = Presentation::from_family(make_family_stream(fam.at("name").get<std::string>(), params), label);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), 0, "/stream/family");
    }
  } else {
    throw ParseError("stream kind must be \"finite\" or \"family\"", 0, "/stream/kind");
  }
  pres = pres.with_flags(std::move(flags));
  if (doc.contains("scale")) {
    auto c = rat_from_json(doc.at("scale"), "/scale");
    if (c.is_zero()) throw ParseError("scale must be positive", 0, "/scale");
    if (pres.is_finite()) throw ParseError("scale applies to family streams only", 0, "/scale");
    pres = pres.scaled(c);
  }
  return pres;
}

Presentation parse_presentation(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    throw ParseError(e.what(), line, {}, e.byte);
  }
  return from_json(doc);
}

Presentation load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

void save(const Presentation& pres, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json(pres).dump(2) << "\n";
}

}  // namespace puiseux
