// tsg: command-line access to the Thompson-Stein group toolkit.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "tsg/diagram.hpp"
#include "tsg/errors.hpp"
#include "tsg/metric.hpp"
#include "tsg/minimizer.hpp"
#include "tsg/words.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDistinct = 1;
constexpr int kUsage = 2;
constexpr int kRejected = 3;

// "@path" reads the argument from a file; trailing newlines are dropped.
std::string argument_text(const std::string& arg) {
  if (arg.empty() || arg.front() != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw CLI::ValidationError("cannot read " + arg.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thompson-Stein groups F(n_1,...,n_k): diagrams, normal forms, metric bounds"};
  app.require_subcommand(1);
  std::string group = "2,3";
  app.add_option("--group", group, "signature n_1,...,n_k")->capture_default_str();

  std::string a1, a2;
  int j = 2, n = 1, bfs = 0, radius = 1;
  auto* eval = app.add_subcommand("eval", "canonical map and minimal leaf count of a word");
  eval->add_option("word", a1)->required();
  auto* nf = app.add_subcommand("nf", "normal form of a word");
  nf->add_option("word", a1)->required();
  auto* eq = app.add_subcommand("eq", "word problem: exit 0 if equal, 1 if distinct");
  eq->add_option("first", a1)->required();
  eq->add_option("second", a2)->required();
  auto* comp = app.add_subcommand("compose", "product of two diagrams");
  comp->add_option("first", a1)->required();
  comp->add_option("second", a2)->required();
  auto* inv = app.add_subcommand("invert", "inverse diagram");
  inv->add_option("diagram", a1)->required();
  auto* red = app.add_subcommand("reduce", "unique minimal representative");
  red->add_option("diagram", a1)->required();
  auto* map = app.add_subcommand("map", "diagram to piecewise-linear map");
  map->add_option("diagram", a1)->required();
  auto* unmap = app.add_subcommand("unmap", "piecewise-linear map to diagram");
  unmap->add_option("map", a1)->required();
  auto* bounds = app.add_subcommand("bounds", "word-metric bounds");
  bounds->add_option("word", a1)->required();
  auto* growth = app.add_subcommand("growth", "leaf growth of (y_j)_0^n");
  growth->add_option("--j", j)->capture_default_str();
  growth->add_option("--n", n)->required();
  growth->add_option("--bfs", bfs, "BFS radius for exact lengths")->capture_default_str();
  auto* ball = app.add_subcommand("ball", "Cayley ball with exact lengths");
  ball->add_option("--radius", radius)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const tsg::GroupSignature sig = tsg::GroupSignature::parse(group);
    std::ostream& out = std::cout;
    if (*eval) {
      const auto x = tsg::evaluate(tsg::parse_word(argument_text(a1), sig), sig);
      out << "map: " << x.map.str() << "\nleaves: " << x.leaf_count
          << "\ndiagram: " << x.rep.str() << '\n';
    } else if (*nf) {
      const auto x = tsg::evaluate(tsg::parse_word(argument_text(a1), sig), sig);
      out << tsg::normal_form(x, sig).str() << '\n';
    } else if (*eq) {
      const auto x = tsg::evaluate(tsg::parse_word(argument_text(a1), sig), sig);
      const auto y = tsg::evaluate(tsg::parse_word(argument_text(a2), sig), sig);
      const bool same = tsg::normal_form(x, sig) == tsg::normal_form(y, sig);
      out << (same ? "equal" : "distinct") << '\n';
      return same ? kOk : kDistinct;
    } else if (*comp) {
      const auto x = tsg::TreePair::parse(argument_text(a1), sig);
      const auto y = tsg::TreePair::parse(argument_text(a2), sig);
      out << tsg::compose(x, y, sig).str() << '\n';
    } else if (*inv) {
      out << tsg::invert(tsg::TreePair::parse(argument_text(a1), sig)).str() << '\n';
    } else if (*red) {
      const auto x = tsg::TreePair::parse(argument_text(a1), sig);
      out << tsg::canonicalize(x, sig).rep.str() << '\n';
    } else if (*map) {
      out << tsg::to_map(tsg::TreePair::parse(argument_text(a1), sig)).str() << '\n';
    } else if (*unmap) {
      out << tsg::from_map(tsg::PLMap::parse(argument_text(a1)), sig).str() << '\n';
    } else if (*bounds) {
      const auto x = tsg::evaluate(tsg::parse_word(argument_text(a1), sig), sig);
      const auto m = tsg::MetricConstants::of(sig);
      const auto w = tsg::to_finite_word(x, sig);
      out << "leaves: " << x.leaf_count << "\nlower_bound: " << tsg::lower_bound(x, sig)
          << "\nnominal_lower_bound: " << tsg::nominal_lower_bound(x, sig)
          << "\nfinite_word_length: " << tsg::word_length(w)
          << "\nfinite_word: " << tsg::print_word(w)
          << "\nnominal_upper_bound: " << m.c * static_cast<long>(x.leaf_count)
          << "\nupper_bound: " << m.d * static_cast<long>(x.leaf_count) << '\n';
    } else if (*growth) {
      out << tsg::growth_csv(tsg::growth_experiment(j, n, sig, bfs));
    } else if (*ball) {
      const tsg::CayleyBall b(sig, radius);
      out << "length,leaves,map\n";
      for (int r = 0; r <= radius; ++r)
        for (const tsg::PLMap& f : b.sphere(r))
          out << r << ',' << tsg::minimal_leaf_count(f, sig) << ',' << f.str() << '\n';
    }
    return kOk;
  } catch (const tsg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const tsg::DivisibilityError& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return kRejected;
  } catch (const tsg::DomainRejection& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return kRejected;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  }
}
