#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "selftest.hpp"
#include "siegel/doubling/fj_check.hpp"

using namespace siegel;
using io::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// Inline JSON when the argument looks like JSON, else a file path.
json json_arg(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first != std::string::npos && (s[first] == '[' || s[first] == '{' || s[first] == '"' || std::isdigit(s[first]) || s[first] == '-'))
    return io::parse(s);
  return io::read_file(s);
}

struct LatticeArgs {
  std::string gram, file;
  void add(CLI::App* c) {
    auto* g = c->add_option("--gram", gram, "Gram matrix as inline JSON");
    auto* f = c->add_option("--lattice", file, "lattice JSON file {\"gram\": ..., \"name\": ...}");
    g->excludes(f);
  }
  bool given() const { return !gram.empty() || !file.empty(); }
  lattice::EvenLattice get(const lattice::EvenLattice& fallback) const {
    if (!gram.empty()) return io::lattice_from(io::parse(gram));
    if (!file.empty()) return io::lattice_from(io::read_file(file));
    return fallback;
  }
  lattice::EvenLattice get() const {
    if (!given()) throw Error(Errc::ParseError, "a lattice is required (--gram or --lattice)");
    return get(lattice::EvenLattice(IntMatrix{{2}}));
  }
};

lattice::EvenLattice trivial_lattice() {
  using namespace lattice;
  return direct_sum(direct_sum(hyperbolic_plane(), hyperbolic_plane()), e8());
}

json lattice_info(const lattice::EvenLattice& L, bool elements) {
  auto D = lattice::discriminant(L);
  json j;
  j["name"] = L.name();
  j["rank"] = L.rank();
  j["gram"] = io::to_json(L.gram());
  j["signature"] = {L.b_plus(), L.b_minus()};
  j["determinant"] = L.determinant();
  j["disc_order"] = D->order();
  j["level"] = D->level();
  j["elementary_divisors"] = D->elementary_divisors();
  if (elements) {
    json es = json::array();
    for (int x = 0; x < D->order(); ++x) {
      json v = json::array();
      for (const auto& r : D->vector_of(x)) v.push_back(io::to_json(r));
      es.push_back({{"index", x}, {"vector", v}, {"q", D->q(x).str()}});
    }
    j["elements"] = es;
  }
  return j;
}

json config_json(const series::SeriesConfig& c) {
  return {{"H", c.H}, {"Q", c.Q}, {"Y", io::num(c.Y)}, {"y_coeff", io::num(c.y_coeff)}, {"threads", c.threads}};
}

json pair_json(const doubling::SymPair& p) { return {{"C", io::to_json(p.C)}, {"D", io::to_json(p.D)}}; }

std::string csv_row(const doubling::SymPair& p, int stratum) {
  std::string s;
  for (const auto* M : {&p.C, &p.D})
    for (std::size_t i = 0; i < M->rows(); ++i)
      for (std::size_t j = 0; j < M->cols(); ++j) s += std::to_string((*M)(i, j)) + ",";
  return s + std::to_string(stratum);
}

json symbol_json(const cycles::CycleSymbol& s) {
  return {{"kind", cycles::kind_name(s.kind)}, {"T", io::to_json(s.T)}, {"alpha", s.alpha}};
}

json sum_json(const cycles::FormalCycleSum& f) {
  json a = json::array();
  for (const auto& [s, c] : f.terms()) {
    json t = symbol_json(s);
    t["coeff"] = c;
    a.push_back(t);
  }
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"siegelkit: Weil representations, Siegel series and special-cycle algebra"};
  app.require_subcommand(1);
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (results do not depend on it)")->capture_default_str()->check(CLI::Range(1u, 256u));

  std::function<void()> action;

  // lattice
  auto* lat = app.add_subcommand("lattice", "lattice and discriminant-form data")->require_subcommand(1);
  auto* lat_info = lat->add_subcommand("info", "rank, signature, |D|, level, elementary divisors");
  LatticeArgs la;
  bool elements = false;
  la.add(lat_info);
  lat_info->add_flag("--elements", elements, "list D with representatives and q-values");
  lat_info->callback([&] { action = [&] { emit(lattice_info(la.get(), elements)); }; });

  // weilrep
  auto* wr = app.add_subcommand("weilrep", "Weil representation matrices")->require_subcommand(1);
  auto* wr_mat = wr->add_subcommand("matrix", "rho(word) as exact cyclotomic entries or complex doubles");
  LatticeArgs lw;
  int wgenus = 1;
  std::string word;
  bool exact = false, as_float = false;
  lw.add(wr_mat);
  wr_mat->add_option("--genus,-g", wgenus, "genus")->check(CLI::Range(0, 3));
  wr_mat->add_option("--word", word, "word JSON (file or inline)")->required();
  auto* fe = wr_mat->add_flag("--exact", exact, "exact entries (default)");
  wr_mat->add_flag("--float", as_float, "complex doubles")->excludes(fe);
  wr_mat->callback([&] {
    action = [&] {
      weil::WeilRepresentation rho(lattice::discriminant(lw.get()), wgenus);
      auto w = io::word_from(json_arg(word), wgenus);
      auto m = rho.rho_word(w);
      emit({{"genus", wgenus}, {"dim", rho.dim()}, {"conductor", rho.conductor()}, {"word", io::to_json(w)},
            {"matrix", io::to_json(m, !as_float)}});
    };
  });

  // expansion
  auto* ex = app.add_subcommand("expansion", "truncated Fourier expansions")->require_subcommand(1);
  LatticeArgs le;
  std::string efile, beta;
  bool eexact = false;
  auto* ex_info = ex->add_subcommand("info", "load and validate an expansion; report cusp status");
  auto* ex_phi = ex->add_subcommand("phi", "Siegel operator Phi_beta");
  for (auto* c : {ex_info, ex_phi}) {
    le.add(c);
    c->add_option("--file", efile, "expansion JSON")->required();
    c->add_flag("--exact", eexact, "coefficients are cyclotomic (default numeric)");
  }
  ex_phi->add_option("--beta", beta, "beta tuple as inline JSON, e.g. [0]")->required();
  auto run_expansion = [&](bool phi) {
    auto D = lattice::discriminant(le.get());
    auto go = [&](auto tag) {
      using V = decltype(tag);
      auto f = io::expansion_from<V>(io::read_file(efile), D);
      if (!phi) {
        auto c = fourier::is_cusp(f);
        json j{{"genus", f.genus()}, {"weight", f.weight().get_str()}, {"size", f.size()}, {"cusp", c.cusp}};
        if (c.witness) j["witness"] = {{"alpha", c.witness->alpha}, {"T", io::to_json(c.witness->T)}};
        emit(j);
      } else {
        emit(io::to_json(fourier::siegel_phi(f, io::parse(beta).get<lattice::DiscTuple>())));
      }
    };
    if (eexact) go(cyclotomic::CycNumber());
    else go(fourier::cplx());
  };
  ex_info->callback([&] { action = [&] { run_expansion(false); }; });
  ex_phi->callback([&] { action = [&] { run_expansion(true); }; });

  // series
  auto* se = app.add_subcommand("series", "numeric Eisenstein/Poincare series and Petersson data")->require_subcommand(1);
  series::SeriesConfig cfg;
  std::string weight = "6", mmax = "4", index = "1", Tjson;
  int pgenus = 1;
  auto add_cfg = [&](CLI::App* c) {
    c->add_option("--height,-H", cfg.H, "coset height bound")->capture_default_str();
    c->add_option("-Q", cfg.Q, "quadrature points")->capture_default_str();
    c->add_option("--ycut", cfg.Y, "fundamental-domain y-cutoff")->capture_default_str();
    c->add_option("--y", cfg.y_coeff, "height of the coefficient line")->capture_default_str();
  };
  LatticeArgs ls;
  auto* se_eis = se->add_subcommand("eis1", "genus-1 vector-valued Eisenstein coefficients");
  ls.add(se_eis);
  se_eis->add_option("-k,--weight", weight, "weight, integer or p/q");
  se_eis->add_option("--mmax", mmax, "largest index")->capture_default_str();
  add_cfg(se_eis);
  se_eis->callback([&] {
    action = [&] {
      cfg.threads = threads;
      const auto L = ls.get(trivial_lattice());
      weil::WeilRepresentation rho(lattice::discriminant(L), 1);
      const Rational k = parse_rational(weight);
      if (!fourier::weight_parity_ok(k, rho.signature())) throw Error(Errc::ParityMismatch, "2k must equal sig mod 4");
      series::Eisenstein1 E(rho, k, cfg);
      auto t = series::eisenstein_coeffs_genus1(E, parse_rational(mmax));
      json cs = json::array();
      for (const auto& [key, v] : t.table.table())
        cs.push_back({{"alpha", key.alpha}, {"m", io::to_json(key.T(0, 0))}, {"value", io::num(v)}, {"error_estimate", io::num(t.error.at(key))}});
      emit({{"lattice", L.name()}, {"weight", k.get_str()}, {"config", config_json(cfg)}, {"value", cs},
            {"error_estimate", io::num(t.max_error)}, {"tail", io::num(t.tail)}});
    };
  });

  auto* se_pet = se->add_subcommand("pet-const", "Petersson constant c_{k,g}, optionally checked by a cone integral");
  se_pet->add_option("-k,--weight", weight, "weight")->required();
  se_pet->add_option("-g,--genus", pgenus, "genus")->check(CLI::Range(1, 4));
  se_pet->add_option("--check", Tjson, "positive-definite T (file or inline JSON) for the cone integral");
  se_pet->callback([&] {
    action = [&] {
      const Rational k = parse_rational(weight);
      auto c = series::petersson_constant(k, pgenus);
      json g = json::array();
      for (const auto& a : c.gamma_args) g.push_back(a.get_str());
      json j{{"k", k.get_str()}, {"g", pgenus}, {"exact", c.exact.str()}, {"pi_power", c.pi_power.get_str()},
             {"four_pi_power", c.four_pi_power.get_str()}, {"gamma_args", g}, {"value", io::num(c.value)}};
      if (!Tjson.empty()) {
        auto cc = series::cone_integral_check(k, io::rat_matrix_from(json_arg(Tjson)));
        j["check"] = {{"numeric", io::num(cc.numeric)}, {"error_estimate", io::num(cc.error_estimate)},
                      {"predicted", io::num(cc.predicted)}, {"relative_error", io::num(cc.relative_error)}};
      }
      emit(j);
    };
  });

  auto* se_unf = se->add_subcommand("unfold-demo", "pairing of Eisenstein and Poincare series against the unfolded value");
  LatticeArgs lu;
  lu.add(se_unf);
  se_unf->add_option("-k,--weight", weight, "even weight >= 8");
  se_unf->add_option("-m,--index", index, "Poincare index")->capture_default_str();
  add_cfg(se_unf);
  se_unf->callback([&] {
    action = [&] {
      cfg.threads = threads;
      weil::WeilRepresentation rho(lattice::discriminant(lu.get(lattice::e8())), 1);
      auto r = series::unfolding_discrepancy(rho, parse_rational(weight), parse_rational(index), cfg);
      emit({{"k", r.k.get_str()}, {"m", r.m.get_str()}, {"config", config_json(cfg)}, {"c0", io::num(r.c0)},
            {"value", {{"quadrature", io::num(r.quadrature)}, {"unfolded", io::num(r.unfolded)}, {"c_m", io::num(r.c_m)}}},
            {"error_estimate", io::num(r.quadrature_tail)}});
    };
  });

  // doubling
  auto* db = app.add_subcommand("doubling", "coprime symmetric pairs and genus-2 checks")->require_subcommand(1);
  int dgenus = 2, dheight = 2, nu = 1, fjH = 3, fjk = 6;
  bool strat = false;
  std::string format = "json";
  auto* db_enum = db->add_subcommand("enum", "enumerate ST(g) up to a height");
  db_enum->add_option("--genus,-g", dgenus)->capture_default_str();
  db_enum->add_option("--height,-H", dheight)->capture_default_str();
  db_enum->add_flag("--stratify", strat, "counts per rank stratum only");
  db_enum->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  db_enum->callback([&] {
    action = [&] {
      if (strat) {
        auto s = doubling::stratify(dgenus, dheight);
        if (format == "csv") {
          std::cout << "stratum,count\n";
          for (auto [k, n] : s.count) std::cout << k << "," << n << "\n";
          return;
        }
        json c = json::object();
        for (auto [k, n] : s.count) c[std::to_string(k)] = n;
        emit({{"genus", dgenus}, {"height", dheight}, {"total", s.total}, {"strata", c}});
        return;
      }
      auto ps = doubling::enumerate_ST(dgenus, dheight);
      if (format == "csv") {
        for (std::size_t i = 0; i < std::size_t(dgenus); ++i)
          for (std::size_t j = 0; j < std::size_t(dgenus); ++j) std::cout << "c" << i << j << ",";
        for (std::size_t i = 0; i < std::size_t(dgenus); ++i)
          for (std::size_t j = 0; j < std::size_t(dgenus); ++j) std::cout << "d" << i << j << ",";
        std::cout << "stratum\n";
        for (const auto& p : ps) std::cout << csv_row(p, doubling::stratum(p)) << "\n";
        return;
      }
      json a = json::array();
      for (const auto& p : ps) {
        json j = pair_json(p);
        j["stratum"] = doubling::stratum(p);
        a.push_back(j);
      }
      emit({{"genus", dgenus}, {"height", dheight}, {"pairs", a}});
    };
  });

  auto* db_rep = db->add_subcommand("setofrep-check", "representative set of a rank stratum against the enumeration");
  db_rep->add_option("--genus,-g", dgenus)->capture_default_str();
  db_rep->add_option("--nu", nu)->capture_default_str();
  db_rep->add_option("--height,-H", dheight)->capture_default_str();
  db_rep->callback([&] {
    action = [&] {
      auto r = doubling::setofrep_check(dgenus, nu, dheight);
      auto list = [](const std::vector<doubling::SymPair>& v) {
        json a = json::array();
        for (const auto& p : v) a.push_back(pair_json(p));
        return a;
      };
      emit({{"genus", r.g}, {"nu", r.nu}, {"height", r.H}, {"induced_bound", r.induced_bound}, {"candidates", r.candidates},
            {"enumerated", r.enumerated}, {"invalid", list(r.invalid)}, {"duplicates", list(r.duplicates)},
            {"uncovered", list(r.uncovered)}, {"pass", r.pass()}});
      if (!r.pass()) throw Error(Errc::InvalidKey, "representative set check failed");
    };
  });

  auto* db_fj = db->add_subcommand("fj-check", "genus-2 Eisenstein series degenerating to genus 1");
  db_fj->add_option("-k,--weight", fjk)->capture_default_str();
  db_fj->add_option("--height,-H", fjH, "genus-2 class height")->capture_default_str();
  db_fj->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  db_fj->callback([&] {
    action = [&] {
      weil::WeilRepresentation rho(lattice::discriminant(trivial_lattice()), 1);
      series::SeriesConfig c1;
      c1.H = 60;
      c1.threads = threads;
      series::Eisenstein1 E1(rho, fjk, c1);
      series::SiegelEisenstein2 E2(rho, fjk, fjH);
      auto r = doubling::fj_degeneration_check(E2, E1, {{0.3, 1.2}, {-0.2, 2.0}, {0.1, 0.9}}, 2.0, 32, 0.05, threads);
      if (format == "csv") {
        std::cout << "re_tau4,im_tau4,re_phi0,im_phi0,re_eis1,im_eis1,relative_error,budget\n";
        for (const auto& p : r.points) {
          for (double x : {p.tau4.real(), p.tau4.imag(), p.phi0.real(), p.phi0.imag(), p.eis1.real(), p.eis1.imag(), p.relative_error})
            std::cout << io::fmt_double(x) << ",";
          std::cout << io::fmt_double(p.budget) << "\n";
        }
        return;
      }
      json pts = json::array();
      for (const auto& p : r.points)
        pts.push_back({{"tau4", io::num(p.tau4)}, {"phi0", io::num(p.phi0)}, {"eis1", io::num(p.eis1)},
                       {"relative_error", io::num(p.relative_error)}, {"budget", io::num(p.budget)}});
      emit({{"k", fjk}, {"height", fjH}, {"classes", E2.class_count()}, {"tolerance", io::num(r.tolerance)}, {"points", pts},
            {"pass", r.pass()}});
    };
  });

  // cycles
  auto* cy = app.add_subcommand("cycles", "special-cycle symbols and Moebius inversion")->require_subcommand(1);
  LatticeArgs lc;
  std::string kind = "ord", Tc, alpha;
  std::string tbound = "6";
  int cgenus = 2;
  auto* cy_exp = cy->add_subcommand("expand", "expand an ordinary symbol into primitive ones or back");
  lc.add(cy_exp);
  cy_exp->add_option("--kind", kind, "kind of the input symbol")->check(CLI::IsMember({"ord", "prim"}))->capture_default_str();
  cy_exp->add_option("--T", Tc, "moment matrix (file or inline JSON)")->required();
  cy_exp->add_option("--alpha", alpha, "tuple in D^g (file or inline JSON)")->required();
  cy_exp->callback([&] {
    action = [&] {
      auto D = lattice::discriminant(lc.get(lattice::e8()));
      cycles::CycleSymbol s{kind == "ord" ? cycles::Kind::Ordinary : cycles::Kind::Primitive, io::rat_matrix_from(json_arg(Tc)),
                            json_arg(alpha).get<lattice::DiscTuple>(), false};
      auto f = s.kind == cycles::Kind::Ordinary ? cycles::expand_ordinary(*D, s) : cycles::expand_primitive(*D, s);
      emit({{"input", symbol_json(s)}, {"canonical", symbol_json(cycles::canonicalize(*D, s))}, {"terms", sum_json(f)}});
    };
  });
  auto* cy_ver = cy->add_subcommand("verify", "check that the two expansions are mutually inverse on a window");
  lc.add(cy_ver);
  cy_ver->add_option("--genus,-g", cgenus)->check(CLI::Range(1, 2))->capture_default_str();
  cy_ver->add_option("--trace-bound", tbound)->capture_default_str();
  cy_ver->callback([&] {
    action = [&] {
      auto D = lattice::discriminant(lc.get(lattice::e8()));
      auto r = cycles::verify_inversion(*D, cgenus, parse_rational(tbound));
      json fails = json::array();
      for (const auto& f : r.failures) fails.push_back({{"symbol", symbol_json(f.symbol)}, {"result", sum_json(f.result)}});
      for (const auto& f : r.reverse_failures) fails.push_back({{"symbol", symbol_json(f.symbol)}, {"result", sum_json(f.result)}});
      emit({{"disc_order", D->order()}, {"genus", cgenus}, {"trace_bound", tbound}, {"checked", r.checked},
            {"checked_reverse", r.checked_reverse}, {"failures", fails}, {"pass", r.pass()}});
      if (!r.pass()) throw Error(Errc::InvalidKey, "inversion failed");
    };
  });

  // selftest
  auto* st = app.add_subcommand("selftest", "run the invariant suite");
  bool quick = false;
  st->add_flag("--quick", quick, "smaller windows");
  int selftest_code = 0;
  st->callback([&] {
    action = [&] {
      bool ok = false;
      emit(siegelkit::run_selftest(quick, seed, threads, ok));
      selftest_code = ok ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    action();
  } catch (const Error& e) {
    emit(io::error_json(e));
    return 1;
  } catch (const json::exception& e) {
    emit(io::error_json(Error(Errc::ParseError, e.what())));
    return 1;
  }
  return selftest_code;
}
