#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "msglab/harness.hpp"

using namespace msglab;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::size_t trials = 0;
  std::string out;
  std::string format = "csv";
};

GroupTag tag_for(const GroupDescriptor& g) {
  switch (g.kind) {
    case GroupDescriptor::Kind::GL: return GroupTag::GL;
    case GroupDescriptor::Kind::SL: return GroupTag::SL;
    case GroupDescriptor::Kind::Sp: return GroupTag::Sp;
    default: return GroupTag::PSL_REP;
  }
}

ClassicalElement element_of(const GroupDescriptor& g, const std::string& text) {
  Matrix m = parse_matrix(g.field, text);
  if (g.kind == GroupDescriptor::Kind::Sp)
    return ClassicalElement(std::move(m), GroupTag::Sp, standard_symplectic_form(g.field, g.n));
  return ClassicalElement(std::move(m), tag_for(g));
}

void emit(const Globals& g, const ExperimentReport& rep) {
  if (g.out.empty()) {
    std::cout << rep.to_csv();
    return;
  }
  std::ofstream(g.out) << rep.to_csv();
  std::ofstream(g.out + ".meta") << rep.metadata_text();
  std::cout << "wrote " << rep.rows.size() << " rows to " << g.out << '\n';
}

void print_split(const Matrix& x, const SplitDecomposition& dec) {
  std::cout << "x " << format_matrix(x) << '\n';
  std::cout << "dim_L " << dec.dim_L() << '\n';
  std::cout << "dim_S " << dec.dim_S() << '\n';
  std::cout << "basis " << format_matrix(dec.basis_matrix(x.field())) << '\n';
  std::cout << "split_condition " << (satisfies_split_condition(x, dec) ? "holds" : "FAILS") << '\n';
}

template <class G, class Mul, class Inv, class Eq, class Fmt>
int report_commutator(const G& g, const std::vector<G>& elems, Mul mul, Inv inv, Eq eq, Fmt fmt) {
  const auto w = commutator_witness(g, elems, mul, inv, eq, elems.size());
  if (!w) {
    std::cout << "no commutator witness in a group of " << elems.size() << " elements\n";
    return 1;
  }
  std::cout << "a " << fmt(w->first) << "\nb " << fmt(w->second) << '\n';
  std::cout << "g = a^-1 b^-1 a b\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric and centralizer computations in finite simple groups"};
  app.require_subcommand(1);
  Globals glob;
  app.add_option("--seed", glob.seed, "64-bit seed")->capture_default_str();
  app.add_option("--trials", glob.trials, "trial count (0 = command default)");
  app.add_option("--out", glob.out, "write CSV output to this path");
  app.add_option("--format", glob.format, "output format")->check(CLI::IsMember({"csv"}));
  int status = 0;

  // metric
  auto* metric = app.add_subcommand("metric", "distance between two elements, or length of one");
  std::string kind, group_text, e1, e2;
  metric->add_option("--kind", kind, "hamming | prank | conj")->required();
  metric->add_option("--group", group_text, "A:n, S:n, GL:n:q, SL:n:q, PSL:n:q, Sp:2n:q")->required();
  metric->add_option("elem1", e1)->required();
  metric->add_option("elem2", e2);
  metric->callback([&] {
    const GroupDescriptor g = parse_group(group_text);
    const MetricKind k = parse_metric_kind(kind);
    if (g.is_permutation_group()) {
      const Permutation a = parse_permutation(e1);
      const Permutation b = e2.empty() ? Permutation::identity(a.degree()) : parse_permutation(e2);
      if (k == MetricKind::Hamming) std::cout << format_rational(hamming_distance(a, b)) << '\n';
      else if (k == MetricKind::Conjugacy) std::cout << format_real(conjugacy_distance(a, b, g)) << '\n';
      else throw std::invalid_argument("prank needs a matrix group");
      return;
    }
    const ClassicalElement a = element_of(g, e1);
    const Matrix b = e2.empty() ? Matrix::identity(g.field, a.n()) : element_of(g, e2).matrix();
    if (k == MetricKind::ProjectiveRank) std::cout << format_rational(projective_rank_distance(a.matrix(), b)) << '\n';
    else if (k == MetricKind::Conjugacy) std::cout << format_real(conjugacy_distance(a.matrix(), b, g)) << '\n';
    else throw std::invalid_argument("hamming needs a permutation group");
  });

  // prepare / centralize / factorize-centralizer share the near-root inputs
  std::string field_text, alpha_text = "1", y_text, phi_text;
  std::uint64_t k = 1;
  auto near_root_options = [&](CLI::App* sub) {
    sub->add_option("--field", field_text, "p, p^e or p^e:c0,...,ce")->required();
    sub->add_option("--k", k, "root order")->required();
    sub->add_option("--alpha", alpha_text, "scalar alpha")->capture_default_str();
    sub->add_option("y", y_text, "matrix \"a,b;c,d\"")->required();
  };
  auto prepared = [&] {
    const FieldPtr f = parse_field(field_text);
    return prepare_near_root(parse_matrix(f, y_text), k, parse_elem(*f, alpha_text));
  };

  auto* prepare = app.add_subcommand("prepare", "near k-th root of alpha close to y");
  near_root_options(prepare);
  prepare->callback([&] {
    const NearRoot nr = prepared();
    print_split(nr.x, nr.dec);
    std::cout << "defect_rank " << nr.defect_rank << "\ndistance_rank " << nr.distance_rank << '\n';
  });

  auto* centralize = app.add_subcommand("centralize", "matrix commuting with the prepared x, close to phi");
  near_root_options(centralize);
  centralize->add_option("phi", phi_text, "invertible matrix")->required();
  centralize->callback([&] {
    const NearRoot nr = prepared();
    const auto res = approx_centralize(nr.x, nr.dec, parse_matrix(nr.x.field(), phi_text), glob.seed);
    print_split(nr.x, nr.dec);
    std::cout << "psi " << format_matrix(res.psi) << '\n';
    std::cout << "commutator_rank " << res.commutator_rank << "\ndistance_rank " << res.distance_rank
              << "\nbound " << res.bound << '\n';
  });

  auto* factorize = app.add_subcommand("factorize-centralizer", "centralizer of the prepared x as GL blocks");
  near_root_options(factorize);
  factorize->callback([&] {
    const NearRoot nr = prepared();
    std::cout << centralizer_factorization(nr.x, nr.dec).format();
  });

  // niceblock
  auto* niceblock = app.add_subcommand("niceblock", "block unipotent element and centralizer certificates");
  std::size_t half = 2;
  std::string nb_group = "SL";
  niceblock->add_option("--n", half, "half the matrix size")->required();
  niceblock->add_option("--field", field_text)->required();
  niceblock->add_option("--group", nb_group, "SL | Sp")->check(CLI::IsMember({"SL", "Sp"}));
  niceblock->callback([&] {
    const auto cert = build_niceblock(half, parse_field(field_text),
                                      nb_group == "SL" ? NiceblockGroup::SL : NiceblockGroup::Sp, glob.seed);
    std::cout << "x " << format_matrix(cert.x.matrix()) << '\n';
    std::cout << "x_length " << format_rational(cert.x_length) << '\n';
    std::cout << "A_generators " << cert.A_generators.size() << '\n';
    std::cout << "H_generators " << cert.H_generators.size() << '\n';
    std::cout << "p_core_order " << cert.p_core_order << '\n';
    std::cout << "witness_u " << format_matrix(cert.witness_u) << "\nwitness_u_length "
              << format_rational(cert.witness_u_length) << '\n';
    std::cout << "witness_h " << format_matrix(cert.witness_h) << "\nwitness_h_length "
              << format_rational(cert.witness_h_length) << '\n';
    std::cout << "commutator " << format_matrix(cert.commutator) << "\ncommutator_length "
              << format_rational(cert.commutator_length) << "\ncommutator_target "
              << format_rational(cert.commutator_target) << '\n';
    const auto issues = verify_niceblock(cert);
    std::cout << "verified " << (issues.empty() ? "yes" : "no") << '\n';
    for (const auto& i : issues) std::cout << "issue " << i << '\n';
    if (!issues.empty()) status = 1;
  });

  // sl-project
  auto* slp = app.add_subcommand("sl-project", "determinant-one matrix within rank 1 of g");
  slp->add_option("--field", field_text)->required();
  slp->add_option("g", y_text)->required();
  slp->callback([&] {
    const auto r = project_to_sl(parse_matrix(parse_field(field_text), y_text));
    std::cout << "projected " << format_matrix(r.projected) << "\nrank_difference " << r.rank_difference
              << "\ndistance " << format_rational(r.distance) << '\n';
  });

  // commutator
  auto* comm = app.add_subcommand("commutator", "brute-force commutator witness");
  comm->add_option("--group", group_text, "A:n, S:n, SL:n:q or PSL:n:q")->required();
  comm->add_option("g", e1)->required();
  comm->callback([&] {
    const GroupDescriptor g = parse_group(group_text);
    if (g.is_permutation_group()) {
      const auto elems = g.kind == GroupDescriptor::Kind::Symmetric ? enumerate_symmetric(g.n) : enumerate_alternating(g.n);
      status = report_commutator(parse_permutation(e1), elems, perm_compose, perm_inverse,
                                 std::equal_to<Permutation>(), format_permutation);
    } else if (g.kind == GroupDescriptor::Kind::SL || g.kind == GroupDescriptor::Kind::PSL) {
      const bool proj = g.kind == GroupDescriptor::Kind::PSL;
      const auto elems = proj ? enumerate_psl(g.field, g.n) : enumerate_sl(g.field, g.n);
      status = report_commutator(
          element_of(g, e1).matrix(), elems, [](const Matrix& a, const Matrix& b) { return a * b; },
          [](const Matrix& a) { return invert(a); },
          [proj](const Matrix& a, const Matrix& b) { return proj ? projectively_equal(a, b) : a == b; },
          format_matrix);
    } else {
      throw std::invalid_argument("commutator supports A, S, SL and PSL");
    }
  });

  // perm-centralizer
  auto* pc = app.add_subcommand("perm-centralizer", "centralizer of a permutation as wreath blocks");
  pc->add_option("sigma", e1, "\"1,2,0\" or \"n:(0 1 2)\"")->required();
  pc->callback([&] { std::cout << perm_centralizer_structure(parse_permutation(e1)).format(); });

  // fingerprint
  auto* fp = app.add_subcommand("fingerprint", "p-core versus reductive part of a prime-order centralizer");
  bool sp_form = false, is_perm = false;
  field_text.clear();
  fp->add_option("--field", field_text, "field of a matrix element");
  fp->add_flag("--perm", is_perm, "element is a permutation");
  fp->add_flag("--sp", sp_form, "x lies in Sp");
  fp->add_option("x", e1)->required();
  fp->callback([&] {
    const Fingerprint f = is_perm ? characteristic_fingerprint(parse_permutation(e1))
                                  : characteristic_fingerprint(parse_matrix(parse_field(field_text), e1), sp_form);
    std::cout << "family " << f.family << "\np " << f.p << "\np_core_order " << f.p_core_order
              << "\nlarge_p_core " << (f.has_large_p_core ? "yes" : "no") << '\n'
              << f.reductive_part.format();
  });

  // chain
  auto* chain = app.add_subcommand("chain", "near-geodesic chain from the identity");
  std::string chain_metric, max_step_text;
  bool symmetric = false;
  group_text.clear();
  chain->add_option("--metric", chain_metric, "hamming | prank")->required()->check(CLI::IsMember({"hamming", "prank"}));
  chain->add_option("--max-step", max_step_text, "rational step bound, e.g. 1/10")->required();
  chain->add_option("--group", group_text, "SL:n:q or PSL:n:q for prank");
  chain->add_flag("--symmetric", symmetric, "hamming chains in S_n instead of A_n");
  chain->add_option("element", e1)->required();
  chain->callback([&] {
    const Rational step = parse_rational(max_step_text);
    ChainPath c;
    if (chain_metric == "hamming") {
      c = hamming_chain(parse_permutation(e1), step, !symmetric);
    } else {
      if (group_text.empty()) throw std::invalid_argument("prank chains need --group");
      c = rank_metric_chain(element_of(parse_group(group_text), e1), step);
    }
    std::cout << format_chain(c);
    const auto rep = verify_chain(c);
    std::cout << "verified " << (rep.valid ? "yes" : "no") << '\n';
    for (const auto& i : rep.issues) std::cout << "issue " << i << '\n';
    if (!rep.valid) status = 1;
  });

  // experiment
  auto* experiment = app.add_subcommand("experiment", "equivalence or fingerprint table over a family");
  std::string exp_kind, family_text, primes_text = "2,3,5";
  experiment->add_option("--kind", exp_kind)->required()->check(CLI::IsMember({"equivalence", "fingerprint"}));
  experiment->add_option("--family", family_text, "A:50,100 or PSL:2,3:9,9:3")->required();
  experiment->add_option("--primes", primes_text, "primes for fingerprints")->capture_default_str();
  experiment->callback([&] {
    const FamilyDescriptor fam = parse_family(family_text);
    if (exp_kind == "equivalence") {
      emit(glob, equivalence_experiment(fam, glob.trials ? glob.trials : 20, glob.seed));
    } else {
      std::vector<std::uint64_t> primes;
      std::stringstream ss(primes_text);
      for (std::string p; std::getline(ss, p, ',');) primes.push_back(std::stoull(p));
      emit(glob, fingerprint_experiment(fam, primes, glob.seed));
    }
  });

  // suite
  auto* suite = app.add_subcommand("suite", "run property suites from a config file");
  std::string config_path;
  suite->add_option("config", config_path, "key = value file")->required()->check(CLI::ExistingFile);
  suite->callback([&] {
    std::ifstream in(config_path);
    auto config = parse_config(in);
    if (!config.count("seed") && app.get_option("--seed")->count()) config["seed"] = std::to_string(glob.seed);
    if (!config.count("trials") && glob.trials) config["trials"] = std::to_string(glob.trials);
    if (!glob.out.empty()) config["out_dir"] = glob.out;
    status = run_suite(config, std::cout);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}
