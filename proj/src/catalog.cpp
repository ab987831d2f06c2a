#include "galembed/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "galembed/error.hpp"

namespace galembed {

namespace detail {
extern const char* const kEmbeddedGoldTable;
}

namespace {

const std::vector<std::string> kKernelBeta{"beta"};
const std::vector<std::string> kKernelAlpha2{"alpha2"};
const std::vector<std::string> kKernelBetaPair{"beta2", "beta1"};
const std::vector<std::string> kKernelGammaPair{"gamma2", "gamma1"};

const std::string kRel2 = "[alpha1,alpha]=alpha2";
const std::string kRel4 = "[alpha1,alpha]=beta1; [alpha2,alpha]=beta2";
const std::string kRel5 = "[alpha1,alpha2]=beta; [alpha3,alpha4]=beta";
const std::string kRel12 = "[alpha1,beta1]=gamma1; [alpha2,beta2]=gamma2";
const std::string kRel13 = "[alpha1,alpha2]=beta1; [alpha1,alpha3]=beta2; [alpha2,alpha4]=beta2";
const std::string kRel15 = "[alpha1,alpha2]=beta1; [alpha1,alpha3]=beta2; [alpha3,alpha4]=beta1; [alpha2,alpha4]=beta2^g";
const std::string kRel14 = "[alpha1,alpha2]=beta";

std::string join_rel(const std::string& base, const std::string& extra) {
  return extra.empty() ? base : base + "; " + extra;
}

std::vector<GroupTemplate> build_templates() {
  std::vector<GroupTemplate> out;

  auto fam2 = [&](const char* label, int order, int table, const std::string& gens, const std::string& rel) {
    const bool gamma = gens.find("gamma") != std::string::npos;
    std::vector<std::string> pre{"alpha1", "alpha"};
    if (gamma) pre.push_back("gamma");
    out.push_back({2, label, order, table, ParamKind::none, gens, join_rel(kRel2, rel), kKernelAlpha2, 1, pre});
  };
  auto fam5 = [&](const char* label, int order, int table, const std::string& gens, const std::string& rel) {
    const bool gamma = gens.find("gamma") != std::string::npos;
    std::vector<std::string> pre{"alpha1", "alpha2", "alpha3", "alpha4"};
    if (gamma) pre.push_back("gamma");
    out.push_back({5, label, order, table, ParamKind::none, gens, join_rel(kRel5, rel), kKernelBeta, 1, pre});
  };
  auto fam4 = [&](const char* label, int order, int table, ParamKind pk, const std::string& gens,
                  const std::string& rel) {
    const bool gamma = gens.find("gamma") != std::string::npos;
    std::vector<std::string> pre{"alpha1", "alpha2", "alpha"};
    if (gamma) pre.push_back("gamma");
    out.push_back({4, label, order, table, pk, gens, join_rel(kRel4, rel), kKernelBetaPair, 1, pre});
  };
  auto fam12 = [&](const char* label, const std::string& rel) {
    out.push_back({12, label, 6, 4, ParamKind::none, "alpha1 alpha2 beta1 beta2 gamma1* gamma2*",
                   join_rel(kRel12, rel), kKernelGammaPair, 1, {"alpha1", "alpha2", "beta1", "beta2"}});
  };
  const std::vector<std::string> pre4{"alpha1", "alpha2", "alpha3", "alpha4"};
  auto fam13 = [&](const char* label, ParamKind pk, const std::string& rel) {
    out.push_back({13, label, 6, 5, pk, "alpha1 alpha2 alpha3 alpha4 beta1* beta2*", join_rel(kRel13, rel),
                   kKernelBetaPair, 1, pre4});
  };
  auto fam15 = [&](const char* label, ParamKind pk, const std::string& rel) {
    out.push_back({15, label, 6, 5, pk, "alpha1 alpha2 alpha3 alpha4 beta1* beta2*", join_rel(kRel15, rel),
                   kKernelBetaPair, 1, pre4});
  };
  auto fam14 = [&](const char* label, const std::string& rel) {
    out.push_back({14, label, 6, 6, ParamKind::none, "alpha1^2 alpha2^2 beta^2*", join_rel(kRel14, rel),
                   kKernelBeta, 2, {"alpha1", "alpha2"}});
  };

  fam2("Phi2(41)", 5, 1, "alpha^3 alpha1 alpha2*", "alpha^p3=alpha2");
  fam2("Phi2(32)a1", 5, 1, "alpha^2 alpha1^2 alpha2*", "alpha^p2=alpha2");
  fam2("Phi2(32)a2", 5, 1, "alpha^3 alpha1 alpha2*", "alpha1^p=alpha2");
  fam2("Phi2(311)b", 5, 1, "alpha alpha1 alpha2* gamma^2", "gamma^p2=alpha2");
  fam2("Phi2(311)c", 5, 1, "alpha^3 alpha1 alpha2*", "");
  fam2("Phi2(221)c", 5, 1, "alpha^2 alpha1 alpha2* gamma", "gamma^p=alpha2");
  fam2("Phi2(221)d", 5, 1, "alpha^2 alpha1^2 alpha2*", "");

  const std::string g5 = "alpha1 alpha2 alpha3 alpha4 beta*";
  fam5("Phi5(2111)", 5, 1, g5, "alpha1^p=beta");
  fam5("Phi5(1^5)", 5, 1, g5, "");

  const std::string g4 = "alpha alpha1 alpha2 beta1* beta2*";
  fam4("Phi4(221)a", 5, 2, ParamKind::none, g4, "alpha^p=beta2; alpha1^p=beta1");
  fam4("Phi4(221)b", 5, 2, ParamKind::none, g4, "alpha^p=beta2; alpha2^p=beta1");
  fam4("Phi4(221)c", 5, 2, ParamKind::none, g4, "alpha1^p=beta1; alpha2^p=beta2");
  fam4("Phi4(221)d_r", 5, 2, ParamKind::r_half, g4, "alpha1^p=beta1^k; alpha2^p=beta2");
  fam4("Phi4(221)e", 5, 2, ParamKind::none, g4, "alpha1^p=beta2^-1/4; alpha2^p=beta1*beta2");
  fam4("Phi4(221)f_0", 5, 2, ParamKind::none, g4, "alpha1^p=beta2; alpha2^p=beta1^nu");
  fam4("Phi4(221)f_r", 5, 2, ParamKind::r_half, g4, "alpha1^p=beta2^k; alpha2^p=beta1*beta2");
  fam4("Phi4(2111)a", 5, 2, ParamKind::none, g4, "alpha^p=beta2");
  fam4("Phi4(2111)b", 5, 2, ParamKind::none, g4, "alpha1^p=beta1");
  fam4("Phi4(2111)c", 5, 2, ParamKind::none, g4, "alpha2^p=beta1");
  fam4("Phi4(1^5)", 5, 2, ParamKind::none, g4, "");

  fam2("Phi2(51)", 6, 3, "alpha^4 alpha1 alpha2*", "alpha^p4=alpha2");
  fam2("Phi2(42)a1", 6, 3, "alpha^3 alpha1^2 alpha2*", "alpha^p3=alpha2");
  fam2("Phi2(42)a2", 6, 3, "alpha^4 alpha1 alpha2*", "alpha1^p=alpha2");
  fam2("Phi2(411)b", 6, 3, "alpha alpha1 alpha2* gamma^3", "gamma^p3=alpha2");
  fam2("Phi2(411)c", 6, 3, "alpha^4 alpha1 alpha2*", "");
  fam2("Phi2(33)", 6, 3, "alpha^2 alpha1^3 alpha2*", "alpha^p2=alpha2");
  fam2("Phi2(321)c", 6, 3, "alpha^3 alpha1 alpha2* gamma", "gamma^p=alpha2");
  fam2("Phi2(321)d", 6, 3, "alpha^2 alpha1 alpha2* gamma^2", "gamma^p2=alpha2");
  fam2("Phi2(321)f", 6, 3, "alpha^3 alpha1^2 alpha2*", "");
  fam2("Phi2(222)b", 6, 3, "alpha^2 alpha1^2 alpha2* gamma", "gamma^p=alpha2");

  const std::string g5a = "alpha1^2 alpha2 alpha3 alpha4 beta*";
  fam5("Phi5(3111)", 6, 3, g5a, "alpha1^p2=beta");
  fam5("Phi5(2211)a", 6, 3, g5a, "alpha2^p=beta");
  fam5("Phi5(2211)b", 6, 3, g5a, "alpha3^p=beta");
  fam5("Phi5(21^4)b", 6, 3, "alpha1 alpha2 alpha3 alpha4 beta* gamma", "gamma^p=beta");
  fam5("Phi5(21^4)c", 6, 3, g5a, "");

  const std::string g4a = "alpha^2 alpha1 alpha2 beta1* beta2*";
  const std::string g4b = "alpha alpha1^2 alpha2 beta1* beta2*";
  const std::string g4c = "alpha alpha1 alpha2^2 beta1* beta2*";
  const std::string g4g = "alpha alpha1 alpha2 beta1* beta2* gamma";
  fam4("Phi4(321)a", 6, 4, ParamKind::none, g4a, "alpha^p2=beta1; alpha2^p=beta2");
  fam4("Phi4(321)b", 6, 4, ParamKind::none, g4a, "alpha^p2=beta1; alpha1^p=beta2");
  fam4("Phi4(321)c", 6, 4, ParamKind::none, g4c, "alpha^p=beta2; alpha2^p2=beta1");
  fam4("Phi4(321)d", 6, 4, ParamKind::none, g4b, "alpha^p=beta2; alpha1^p2=beta1");
  fam4("Phi4(321)e_r", 6, 4, ParamKind::r_full, g4b, "alpha1^p2=beta1; alpha2^p=beta2^r");
  fam4("Phi4(321)f_r", 6, 4, ParamKind::r_one_nu, g4c, "alpha1^p=beta2^r; alpha2^p2=beta1");
  fam4("Phi4(3111)a", 6, 4, ParamKind::none, g4a, "alpha^p2=beta1");
  fam4("Phi4(3111)b", 6, 4, ParamKind::none, g4b, "alpha1^p2=beta1");
  fam4("Phi4(3111)c", 6, 4, ParamKind::none, g4c, "alpha2^p2=beta1");
  fam4("Phi4(222)a", 6, 4, ParamKind::none, g4a, "alpha1^p=beta1; alpha2^p=beta2");
  fam4("Phi4(222)b_r", 6, 4, ParamKind::r_half, g4a, "alpha1^p=beta1^k; alpha2^p=beta2");
  fam4("Phi4(222)c", 6, 4, ParamKind::none, g4b, "alpha^p=beta1; alpha2^p=beta2");
  fam4("Phi4(222)d_1", 6, 4, ParamKind::none, g4a, "alpha1^p=beta2^-1/4; alpha2^p=beta1*beta2");
  fam4("Phi4(222)d_2", 6, 4, ParamKind::none, g4b, "alpha^p=beta2; alpha2^p=beta1");
  fam4("Phi4(222)e_0", 6, 4, ParamKind::none, g4a, "alpha1^p=beta2; alpha2^p=beta1^nu");
  fam4("Phi4(222)e_r", 6, 4, ParamKind::r_half, g4a, "alpha1^p=beta2^k; alpha2^p=beta1*beta2");
  fam4("Phi4(2211)g", 6, 4, ParamKind::none, g4g, "gamma^p=beta2; alpha^p=beta1");
  fam4("Phi4(2211)h", 6, 4, ParamKind::none, g4g, "gamma^p=beta2; alpha1^p=beta1");
  fam4("Phi4(2211)i", 6, 4, ParamKind::none, g4g, "gamma^p=beta2; alpha2^p=beta1");
  fam4("Phi4(2211)j_1", 6, 4, ParamKind::none, g4a, "alpha1^p=beta1");
  fam4("Phi4(2211)j_2", 6, 4, ParamKind::none, g4b, "alpha^p=beta1");
  fam4("Phi4(2211)k", 6, 4, ParamKind::none, g4b, "alpha^p=beta2");
  fam4("Phi4(2211)l", 6, 4, ParamKind::none, g4a, "alpha2^p=beta1");
  fam4("Phi4(2211)m", 6, 4, ParamKind::none, g4b, "alpha2^p=beta2");
  fam4("Phi4(2211)n", 6, 4, ParamKind::none, g4b, "alpha2^p=beta1");
  fam4("Phi4(21^4)d", 6, 4, ParamKind::none, g4g, "gamma^p=beta1");
  fam4("Phi4(21^4)e", 6, 4, ParamKind::none, g4a, "");
  fam4("Phi4(21^4)f", 6, 4, ParamKind::none, g4b, "");

  fam12("Phi12(2211)a", "alpha1^p=gamma1; beta1^p=gamma2");
  fam12("Phi12(2211)c", "alpha1^p=gamma1*gamma2; alpha2^p=gamma2");
  fam12("Phi12(2211)d", "alpha1^p=gamma2; alpha2^p=gamma1");
  fam12("Phi12(2211)e", "alpha1^p=gamma1*gamma2; alpha2^p=gamma1");
  fam12("Phi12(2211)f", "alpha1^p=gamma1; alpha2^p=gamma1; beta1^p=gamma2");
  fam12("Phi12(2211)g", "alpha1^p=gamma1; alpha2^p=gamma2; beta1^p=gamma2");
  fam12("Phi12(2211)h", "alpha1^p=gamma1; beta2^p=gamma1; alpha2^p=gamma2; beta1^p=gamma2");
  fam12("Phi12(2211)i", "alpha1^p=gamma1; alpha2^p=gamma1*gamma2; beta1^p=gamma2");
  fam12("Phi12(21^4)b", "alpha1^p=gamma1*gamma2");
  fam12("Phi12(21^4)c", "alpha1^p=gamma2");
  fam12("Phi12(21^4)d", "alpha1^p=gamma1; alpha2^p=gamma1");
  fam12("Phi12(21^4)e", "alpha1^p=gamma1*gamma2; alpha2^p=gamma1*gamma2");

  fam13("Phi13(2211)a", ParamKind::none, "alpha2^p=beta2; alpha1^p=beta1");
  fam13("Phi13(2211)b", ParamKind::none, "alpha3^p=beta2; alpha1^p=beta1");
  fam13("Phi13(2211)c_r", ParamKind::r_one_nu, "alpha2^p=beta2^r; alpha3^p=beta1");
  fam13("Phi13(2211)d", ParamKind::none, "alpha1^p=beta2; alpha3^p=beta1");
  fam13("Phi13(2211)e_r", ParamKind::r_full, "alpha4^p=beta2^r; alpha1^p=beta1");
  fam13("Phi13(2211)f", ParamKind::none, "alpha4^p=beta2; alpha3^p=beta1");
  fam13("Phi13(21^4)a", ParamKind::none, "alpha1^p=beta1");
  fam13("Phi13(21^4)b", ParamKind::none, "alpha1^p=beta2");
  fam13("Phi13(21^4)c", ParamKind::none, "alpha3^p=beta2");
  fam13("Phi13(21^4)d", ParamKind::none, "alpha3^p=beta1");
  fam13("Phi13(1^6)", ParamKind::none, "");

  fam15("Phi15(2211)a", ParamKind::none, "alpha1^p=beta1; alpha2^p=beta2");
  fam15("Phi15(2211)b_rs", ParamKind::r_s, "alpha2^p=beta2^k; alpha1^p=beta1*beta2^r");
  fam15("Phi15(2211)c", ParamKind::none, "alpha1^p=beta1; alpha4^p=beta2^-g");
  fam15("Phi15(2211)d_r", ParamKind::r_half, "alpha1^p=beta1; alpha4^p=beta2^k");
  fam15("Phi15(21^4)", ParamKind::none, "alpha1^p=beta1");
  fam15("Phi15(1^6)", ParamKind::none, "");

  fam14("Phi14(42)", "alpha1^p2=beta");
  fam14("Phi14(321)", "alpha1^p2=beta^p");
  fam14("Phi14(222)", "");
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::int64_t> r_values(ParamKind kind, const PrimeContext& ctx) {
  std::vector<std::int64_t> out;
  switch (kind) {
    case ParamKind::none:
      break;
    case ParamKind::r_half:
    case ParamKind::r_s:
      for (std::int64_t r = 1; r <= (ctx.p - 1) / 2; ++r) out.push_back(r);
      break;
    case ParamKind::r_full:
      for (std::int64_t r = 1; r <= ctx.p - 1; ++r) out.push_back(r);
      break;
    case ParamKind::r_one_nu:
      out = {1, ctx.nu};
      break;
  }
  return out;
}

// Generator list "name[^e][*] ...".
std::vector<Generator> parse_generators(std::string_view text) {
  std::vector<Generator> gens;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    Generator g;
    if (!tok.empty() && tok.back() == '*') {
      g.central = true;
      tok.pop_back();
    }
    const auto caret = tok.find('^');
    g.name = tok.substr(0, caret);
    if (caret != std::string::npos) g.rel_exp = std::stoi(tok.substr(caret + 1));
    gens.push_back(std::move(g));
  }
  return gens;
}

class RelationParser {
 public:
  RelationParser(const std::vector<Generator>& gens, const PrimeContext& ctx, const Bindings& bindings)
      : gens_(gens), ctx_(ctx), bindings_(bindings) {
    for (const Generator& g : gens_) orders_.push_back(ipow(ctx.p, g.rel_exp));
  }

  std::size_t index(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].name == name) return i;
    }
    throw DataError("relation names unknown generator '" + name + "'");
  }

  std::string name_at(std::string_view text, std::size_t& pos) const {
    const std::size_t start = pos;
    while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw ParseError("expected generator name", pos);
    return std::string(text.substr(start, pos - start));
  }

  // Product of central generators with exponents.
  GroupElement word(std::string_view text) const {
    GroupElement w{std::vector<std::int64_t>(gens_.size(), 0)};
    std::size_t pos = 0;
    while (true) {
      const std::size_t i = index(name_at(text, pos));
      if (!gens_[i].central) {
        throw DataError("relation value uses non-central generator " + gens_[i].name);
      }
      std::int64_t e = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        e = parse_exponent(text, pos).bind(bindings_, orders_[i]);
      }
      w.coords[i] = mod(w.coords[i] + e, orders_[i]);
      if (pos >= text.size()) break;
      if (text[pos] != '*') throw ParseError("expected '*' in relation word", pos);
      ++pos;
    }
    return w;
  }

  GroupElement negate(GroupElement w) const {
    for (std::size_t i = 0; i < w.coords.size(); ++i) w.coords[i] = mod(-w.coords[i], orders_[i]);
    return w;
  }

  void apply(std::string_view relation, std::vector<GroupElement>& tails,
             std::map<Presentation::CommKey, GroupElement>& comm) const {
    std::string rel;
    for (char c : relation) {
      if (!std::isspace(static_cast<unsigned char>(c))) rel.push_back(c);
    }
    const auto eq = rel.find('=');
    if (eq == std::string::npos) throw DataError("relation without '=': " + rel);
    const std::string lhs = rel.substr(0, eq);
    const GroupElement value = word(std::string_view(rel).substr(eq + 1));
    if (!lhs.empty() && lhs.front() == '[') {
      const auto comma = lhs.find(',');
      if (comma == std::string::npos || lhs.back() != ']') throw DataError("malformed commutator: " + lhs);
      const std::size_t x = index(lhs.substr(1, comma - 1));
      const std::size_t y = index(lhs.substr(comma + 1, lhs.size() - comma - 2));
      if (x == y) throw DataError("commutator of a generator with itself: " + lhs);
      // [x,y] = [y,x]^-1
      if (x > y) {
        comm[{x, y}] = value;
      } else {
        comm[{y, x}] = negate(value);
      }
      return;
    }
    const auto caret = lhs.find('^');
    if (caret == std::string::npos || caret + 1 >= lhs.size() || lhs[caret + 1] != 'p') {
      throw DataError("expected 'x^pE' on the left of a power relation: " + lhs);
    }
    const std::size_t i = index(lhs.substr(0, caret));
    const std::string e = lhs.substr(caret + 2);
    const int level = e.empty() ? 1 : std::stoi(e);
    if (level != gens_[i].rel_exp) {
      throw DataError("power relation " + lhs + " does not match the relative order of " + gens_[i].name);
    }
    tails[i] = value;
  }

 private:
  const std::vector<Generator>& gens_;
  const PrimeContext& ctx_;
  const Bindings& bindings_;
  std::vector<std::int64_t> orders_;
};

}  // namespace

const std::vector<GroupTemplate>& templates() {
  static const std::vector<GroupTemplate> all = build_templates();
  return all;
}

const GroupTemplate& find_template(std::string_view label) {
  for (const GroupTemplate& t : templates()) {
    if (t.label == label) return t;
  }
  throw DataError("unknown group label '" + std::string(label) + "'");
}

std::string GroupId::params_text() const {
  if (!r) return "";
  std::string out = "r=" + std::to_string(*r);
  if (s) out += ",s=" + std::to_string(*s);
  return out;
}

std::string GroupId::label() const {
  return r ? template_label + "[" + params_text() + "]" : template_label;
}

std::int64_t phi15_n(const PrimeContext& ctx, std::int64_t r) {
  const std::int64_t p = ctx.p;
  const std::int64_t target = mul_mod(mul_mod(ctx.g, ctx.g, p), mod(ctx.g - mul_mod(r, r, p), p), p);
  if (target == 0) {
    throw DataError("Phi15(2211)b_rs is undefined for r=" + std::to_string(r) + " since g = r^2 mod p");
  }
  const std::int64_t n = discrete_log_mod_p(ctx.g, target, p);
  return n == 0 ? p - 1 : n;
}

std::int64_t phi15_s_max(const PrimeContext& ctx, std::int64_t r) {
  // [1/(2n)] = 0 for n >= 1.
  return (ctx.p - 3) / 2 + phi15_n(ctx, r);
}

void validate_params(const GroupId& id, const PrimeContext& ctx) {
  const GroupTemplate& t = find_template(id.template_label);
  if (t.family != id.family || t.order_exp != id.order_exp) throw DataError("group id does not match its template");
  if (t.params == ParamKind::none) {
    if (id.r || id.s) throw DataError(t.label + " takes no parameters");
    return;
  }
  if (!id.r) throw DataError(t.label + " needs a parameter r, e.g. " + t.label + "[r=1]");
  const auto rs = r_values(t.params, ctx);
  if (std::find(rs.begin(), rs.end(), *id.r) == rs.end()) {
    throw DataError("r=" + std::to_string(*id.r) + " is out of range for " + t.label + " at p=" +
                    std::to_string(ctx.p));
  }
  if (t.params == ParamKind::r_s) {
    if (!id.s) throw DataError(t.label + " needs parameters r and s, e.g. " + t.label + "[r=1,s=0]");
    const std::int64_t m = phi15_s_max(ctx, *id.r);
    if (*id.s < 0 || *id.s > m) {
      throw DataError("s=" + std::to_string(*id.s) + " is out of range 0.." + std::to_string(m) + " for " + t.label);
    }
  } else if (id.s) {
    throw DataError(t.label + " takes no parameter s");
  }
}

std::vector<GroupId> enumerate_ids(int order_exp, const PrimeContext& ctx) {
  std::vector<GroupId> out;
  for (const GroupTemplate& t : templates()) {
    if (order_exp != 0 && t.order_exp != order_exp) continue;
    GroupId base{t.family, t.label, t.order_exp, std::nullopt, std::nullopt};
    if (t.params == ParamKind::none) {
      out.push_back(base);
      continue;
    }
    for (std::int64_t r : r_values(t.params, ctx)) {
      if (t.params == ParamKind::r_s) {
        const std::int64_t target = mul_mod(ctx.g, ctx.g, ctx.p) * mod(ctx.g - r * r, ctx.p) % ctx.p;
        if (target == 0) continue;
        for (std::int64_t s = 0; s <= phi15_s_max(ctx, r); ++s) {
          GroupId id = base;
          id.r = r;
          id.s = s;
          out.push_back(id);
        }
      } else {
        GroupId id = base;
        id.r = r;
        out.push_back(id);
      }
    }
  }
  return out;
}

std::vector<GroupId> table_ids(int table, const PrimeContext& ctx) {
  if (table < 1 || table > 6) throw DataError("table number must be 1..6");
  std::vector<GroupId> out;
  for (const GroupId& id : enumerate_ids(0, ctx)) {
    if (id.group_template().table == table) out.push_back(id);
  }
  return out;
}

GroupId parse_id(std::string_view text, const PrimeContext& ctx) {
  const std::string s = trim(text);
  const auto bracket = s.find('[');
  const GroupTemplate& t = find_template(s.substr(0, bracket));
  GroupId id{t.family, t.label, t.order_exp, std::nullopt, std::nullopt};
  if (bracket != std::string::npos) {
    if (s.back() != ']') throw DataError("malformed parameter list in '" + s + "'");
    for (const std::string& kv : split(std::string_view(s).substr(bracket + 1, s.size() - bracket - 2), ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw DataError("malformed parameter '" + kv + "'");
      const std::string key = trim(kv.substr(0, eq));
      std::int64_t value = 0;
      try {
        value = std::stoll(kv.substr(eq + 1));
      } catch (const std::exception&) {
        throw DataError("parameter '" + key + "' needs an integer value");
      }
      if (key == "r") {
        id.r = value;
      } else if (key == "s") {
        id.s = value;
      } else {
        throw DataError("unknown parameter '" + key + "'");
      }
    }
  }
  validate_params(id, ctx);
  return id;
}

Bindings bindings_for(const GroupId& id, const PrimeContext& ctx) {
  Bindings b{{"p", ctx.p}, {"nu", ctx.nu}, {"g", ctx.g}};
  if (!id.r) return b;
  const std::int64_t p = ctx.p;
  const std::int64_t r = *id.r;
  b["r"] = r;
  const std::string& label = id.template_label;
  const std::int64_t inv4 = mod_inverse(4, p);
  if (label == "Phi4(221)d_r" || label == "Phi4(222)b_r" || label == "Phi15(2211)d_r") {
    b["k"] = pow_mod(ctx.g, r, p);
  } else if (label == "Phi4(221)f_r") {
    b["k"] = mul_mod(pow_mod(ctx.g, 2 * r + 1, p), inv4, p);
  } else if (label == "Phi4(222)e_r") {
    b["k"] = mul_mod(mod(pow_mod(ctx.g, 2 * r + 1, p) - 1, p), inv4, p);
  } else if (label == "Phi15(2211)b_rs") {
    b["s"] = *id.s;
    b["k"] = pow_mod(ctx.g, *id.s, p);
  }
  return b;
}

Presentation instantiate(const GroupId& id, const PrimeContext& ctx) {
  validate_params(id, ctx);
  const GroupTemplate& t = find_template(id.template_label);
  const Bindings bindings = bindings_for(id, ctx);
  std::vector<Generator> gens = parse_generators(t.generators);
  std::vector<GroupElement> tails(gens.size(), GroupElement{std::vector<std::int64_t>(gens.size(), 0)});
  std::map<Presentation::CommKey, GroupElement> comm;
  RelationParser parser(gens, ctx, bindings);
  for (const std::string& rel : split(t.relations, ';')) {
    if (!rel.empty()) parser.apply(rel, tails, comm);
  }
  return Presentation(ctx, std::move(gens), std::move(tails), std::move(comm));
}

GroupRecord make_record(const GroupId& id, const PrimeContext& ctx) {
  const GroupTemplate& t = find_template(id.template_label);
  return GroupRecord{id, instantiate(id, ctx), t.kernels, t.kernel_level, t.preimages, bindings_for(id, ctx)};
}

GoldTable GoldTable::parse(std::string_view text) {
  GoldTable table;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const std::string line = trim(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '|');
    if (fields.size() != 4) {
      throw DataError("gold table line " + std::to_string(line_no) + ": expected 4 fields separated by '|'");
    }
    GoldRow row;
    row.label = fields[0];
    try {
      row.order_exp = std::stoi(fields[1]);
      row.root_level = std::stoi(fields[2]);
    } catch (const std::exception&) {
      throw DataError("gold table line " + std::to_string(line_no) + ": bad integer field");
    }
    row.conditions = split_conditions(fields[3]);
    for (const std::string& c : row.conditions) parse_symbolic(c);
    if (table.contains(row.label)) {
      throw DataError("gold table line " + std::to_string(line_no) + ": duplicate label " + row.label);
    }
    table.rows_.push_back(std::move(row));
  }
  return table;
}

GoldTable GoldTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read gold table " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const GoldTable& GoldTable::embedded() {
  static const GoldTable table = parse(detail::kEmbeddedGoldTable);
  return table;
}

bool GoldTable::contains(std::string_view template_label) const {
  return std::any_of(rows_.begin(), rows_.end(), [&](const GoldRow& r) { return r.label == template_label; });
}

const GoldRow& GoldTable::row(std::string_view template_label) const {
  for (const GoldRow& r : rows_) {
    if (r.label == template_label) return r;
  }
  throw DataError("no gold row for '" + std::string(template_label) + "'");
}

TableRow gold_row(const GroupId& id, const PrimeContext& ctx, const GoldTable& gold) {
  const GroupTemplate& t = find_template(id.template_label);
  const GoldRow& g = gold.row(id.template_label);
  TableRow row;
  row.group = id;
  row.independents = static_cast<int>(t.preimages.size());
  row.root_level = g.root_level;
  row.basis = SymbolBasis{ctx.p, row.independents, g.root_level, t.kernel_level};
  const Bindings b = bindings_for(id, ctx);
  for (const std::string& c : g.conditions) row.obstructions.push_back(parse(c, row.basis, b));
  return row;
}

}  // namespace galembed
