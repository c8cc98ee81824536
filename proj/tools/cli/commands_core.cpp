#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "adlv/adlv.hpp"
#include "adlv/dataset.hpp"
#include "adlv/qbg.hpp"
#include "commands.hpp"

namespace adlv::cli {

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

NewtonPoint parse_nu(const std::string& text, int n) {
  NewtonPoint nu = NewtonPoint::parse(text);
  if (nu.rank() != n) {
    throw std::invalid_argument("Newton point " + nu.to_string() + " has rank " + std::to_string(nu.rank()) +
                                ", expected " + std::to_string(n));
  }
  return nu;
}

AdlvTable table_for(const Options& o, const AffineElement& w) {
  TableComputer computer(o.n, TableOptions{o.budget, std::nullopt});
  return computer.table(w);
}

}  // namespace

int run_query(const Options& o) {
  const AffineElement w = parse_element(o.w, o.n);
  std::vector<NewtonPoint> points;
  for (const auto& text : o.nu) points.push_back(parse_nu(text, o.n));
  std::vector<std::string> what = o.print.empty() ? std::vector<std::string>{} : split_commas(o.print);
  for (const auto& token : what) {
    if (token != "dim" && token != "irr") throw std::invalid_argument("--print accepts dim and irr, got '" + token + "'");
  }
  if (what.size() > 1 && what.size() != points.size()) {
    throw std::invalid_argument("--print needs one entry or one per --nu");
  }
  const AdlvTable table = table_for(o, w);
  std::vector<std::string> cells;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const QueryResult r = query(table, points[i]);
    const auto dim = [&] { return r.dim ? std::to_string(*r.dim) : std::string("empty"); };
    const auto irr = [&] { return std::to_string(r.irr); };
    if (what.empty()) {
      cells.push_back(dim());
      cells.push_back(irr());
    } else {
      const std::string& token = what.size() == 1 ? what.front() : what[i];
      cells.push_back(token == "dim" ? dim() : irr());
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) std::cout << (i ? " " : "") << cells[i];
  std::cout << '\n';
  return 0;
}

int run_list(const Options& o) {
  const AffineElement w = parse_element(o.w, o.n);
  std::cout << table_for(o, w).listing();
  return 0;
}

int run_selftest(const Options&) {
  int failures = 0;
  const auto report = [&](const char* name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
    if (!ok) ++failures;
  };

  const AffineElement w = parse_element("affine_Weyl([1,1,-2],[2,1])", 3);
  TableComputer computer(3);
  const AdlvTable table = computer.table(w);
  const std::string expected =
      "Newton point = [1/2, 1/2, -1], dim = 1, irr = 1\nNewton point = [0, 0, 0], dim = 3, irr = 1\n";
  report("worked-example listing", table.listing() == expected, "support of affine_Weyl([1,1,-2],[2,1])");

  std::ostringstream line;
  const char* nus[] = {"0,0,0", "1/2,1/2,-1", "1,0,-1", "2,0,-2"};
  for (int i = 0; i < 4; ++i) {
    const QueryResult r = query(table, NewtonPoint::parse(nus[i]));
    if (i) line << ' ';
    if (i % 2 == 0) {
      line << (r.dim ? std::to_string(*r.dim) : "empty");
    } else {
      line << r.irr;
    }
  }
  report("worked-example query", line.str() == "3 1 empty 0", "got \"" + line.str() + "\"");

  const AffineElement lhs = parse_element("affine_Weyl([1,0,-1],[1,2])", 3);
  const AffineElement rhs = parse_element("exp([0,2])", 3);
  report("notation pin", lhs == rhs, format_element(lhs) + " vs exp([0,2]) = " + format_element(rhs));
  return failures == 0 ? 0 : 1;
}

int run_verify_bound(const Options& o) {
  BoundOptions options;
  options.class_budget = o.budget;
  options.workers = o.workers;
  options.witness_only = o.witness_only;
  const BoundReport r = verify_bound(o.n, o.max_len, options);
  if (!o.report.empty()) {
    std::ofstream out(o.report);
    if (!out) throw std::invalid_argument("cannot write " + o.report);
    out << r.to_json() << '\n';
  }
  if (o.format == "json") {
    std::cout << r.to_json() << '\n';
  } else {
    std::cout << "n               " << r.n << '\n'
              << "max_len         " << r.max_len << '\n'
              << "bound           " << format_rational(r.bound) << '\n'
              << "observed_max    " << r.observed_max << '\n'
              << "scanned         " << r.scanned << '\n'
              << "witness_length  " << r.witness_length << '\n'
              << "witness_delta   " << r.witness_delta << '\n'
              << "witness_ok      " << (r.witness_ok ? "true" : "false") << '\n';
    for (const auto& w : r.attained_at) std::cout << "attained_at     " << format_element(w) << '\n';
    std::cerr << "elapsed " << r.elapsed_seconds << " s\n";
  }
  return 0;
}

int run_stats(const Options& o) {
  PairOptions options;
  options.workers = o.workers;
  options.table.class_budget = o.budget;
  std::cout << stats_tables(o.n, o.max_len, options).render();
  return 0;
}

}  // namespace adlv::cli
