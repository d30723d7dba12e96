#include "icbell/serialization.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace icbell {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* name) {
  if (!j.contains(name))
    throw DomainError(std::string("missing JSON field \"") + name + "\"");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad JSON field \"") + name + "\": " + e.what());
  }
}

}  // namespace

std::string to_json(const NSBox& box) {
  json p = json::array();
  for (int alpha = 0; alpha < box.n_a(); ++alpha) {
    json per_beta = json::array();
    for (int beta = 0; beta < box.n_b(); ++beta) {
      json per_a = json::array();
      for (int a = 0; a < box.d_a(); ++a) {
        json per_b = json::array();
        for (int b = 0; b < box.d_b(); ++b) per_b.push_back(box.p(a, b, alpha, beta));
        per_a.push_back(std::move(per_b));
      }
      per_beta.push_back(std::move(per_a));
    }
    p.push_back(std::move(per_beta));
  }
  return json{{"n_a", box.n_a()},
              {"n_b", box.n_b()},
              {"d_a", box.d_a()},
              {"d_b", box.d_b()},
              {"p", std::move(p)}}
      .dump(2);
}

NSBox box_from_json(const std::string& text) {
  const json j = parse(text);
  const int n_a = field<int>(j, "n_a"), n_b = field<int>(j, "n_b");
  const int d_a = field<int>(j, "d_a"), d_b = field<int>(j, "d_b");
  const auto p = field<std::vector<std::vector<std::vector<std::vector<double>>>>>(
      j, "p");
  if (static_cast<int>(p.size()) != n_a)
    throw ShapeMismatch("probability table has wrong setting count");
  std::vector<double> table;
  table.reserve(static_cast<size_t>(n_a) * n_b * d_a * d_b);
  for (const auto& per_beta : p) {
    if (static_cast<int>(per_beta.size()) != n_b)
      throw ShapeMismatch("probability table has wrong setting count");
    for (const auto& per_a : per_beta) {
      if (static_cast<int>(per_a.size()) != d_a)
        throw ShapeMismatch("probability table has wrong outcome count");
      for (const auto& per_b : per_a) {
        if (static_cast<int>(per_b.size()) != d_b)
          throw ShapeMismatch("probability table has wrong outcome count");
        table.insert(table.end(), per_b.begin(), per_b.end());
      }
    }
  }
  return NSBox(n_a, n_b, d_a, d_b, std::move(table));
}

std::string to_json(const BiasTable& t) {
  json e = json::array();
  for (int j = 0; j < t.n_a(); ++j) {
    json per_i = json::array();
    for (int i = 0; i < t.n_b(); ++i) {
      json per_k = json::array();
      for (int k = 0; k < t.d(); ++k) per_k.push_back(t.at(j, i, k));
      per_i.push_back(std::move(per_k));
    }
    e.push_back(std::move(per_i));
  }
  return json{
      {"n_a", t.n_a()}, {"n_b", t.n_b()}, {"d", t.d()}, {"e", std::move(e)}}
      .dump(2);
}

BiasTable bias_table_from_json(const std::string& text) {
  const json j = parse(text);
  const int n_a = field<int>(j, "n_a"), n_b = field<int>(j, "n_b");
  const int d = field<int>(j, "d");
  const auto e = field<std::vector<std::vector<std::vector<double>>>>(j, "e");
  if (static_cast<int>(e.size()) != n_a) throw ShapeMismatch("bias table shape");
  BiasTable t(n_a, n_b, d);
  for (int a = 0; a < n_a; ++a) {
    if (static_cast<int>(e[a].size()) != n_b) throw ShapeMismatch("bias table shape");
    for (int b = 0; b < n_b; ++b) {
      if (static_cast<int>(e[a][b].size()) != d) throw ShapeMismatch("bias table shape");
      for (int k = 0; k < d; ++k) t.at(a, b, k) = e[a][b][k];
    }
  }
  t.validate();
  return t;
}

std::string to_json(const Protocol& p) {
  return json{{"n", p.n}, {"d", p.d},       {"n_alpha", p.n_alpha},
              {"f", p.f}, {"h", p.h},       {"r", p.r}}
      .dump(2);
}

Protocol protocol_from_json(const std::string& text) {
  const json j = parse(text);
  const int n = field<int>(j, "n"), d = field<int>(j, "d");
  auto f = field<std::vector<int>>(j, "f");
  auto h = field<std::vector<int>>(j, "h");
  auto r = field<std::vector<int>>(j, "r");
  int n_alpha = j.value("n_alpha", 0);
  if (n_alpha <= 0)
    for (int v : f) n_alpha = std::max(n_alpha, v + 1);
  return Protocol(n, d, n_alpha, std::move(f), std::move(h), std::move(r));
}

std::string to_json(const QuadraticInequality& q) {
  json coeffs = json::array();
  for (const auto& row : q.coeffs) {
    json per_slot = json::array();
    for (const auto& w : row) per_slot.push_back(json::array({w.real(), w.imag()}));
    coeffs.push_back(std::move(per_slot));
  }
  return json{{"family", q.family}, {"params", q.params}, {"n_a", q.n_a},
              {"n_b", q.n_b},       {"d", q.d},           {"bound", q.bound},
              {"coeffs", std::move(coeffs)}}
      .dump(2);
}

QuadraticInequality inequality_from_json(const std::string& text) {
  const json j = parse(text);
  QuadraticInequality q;
  q.family = field<std::string>(j, "family");
  if (j.contains("params"))
    q.params = field<std::map<std::string, double>>(j, "params");
  q.n_a = field<int>(j, "n_a");
  q.n_b = field<int>(j, "n_b");
  q.d = field<int>(j, "d");
  q.bound = field<double>(j, "bound");
  const auto rows = field<std::vector<std::vector<std::array<double, 2>>>>(j, "coeffs");
  if (static_cast<int>(rows.size()) != q.n_b)
    throw ShapeMismatch("coefficient row count");
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != q.n_a * q.d)
      throw ShapeMismatch("coefficient row length");
    std::vector<std::complex<double>> out;
    out.reserve(row.size());
    for (const auto& w : row) out.emplace_back(w[0], w[1]);
    q.coeffs.push_back(std::move(out));
  }
  return q;
}

std::string to_json(const Evaluation& ev) {
  return json{{"lhs", ev.lhs},
              {"bound", ev.bound},
              {"violation", ev.violation},
              {"violated", ev.violated}}
      .dump(2);
}

std::string to_json(const ICEvaluation& ev) {
  return json{{"lhs_bits", ev.lhs_bits},
              {"capacity_bits", ev.capacity_bits},
              {"gap", ev.gap},
              {"per_i", ev.per_i}}
      .dump(2);
}

std::string to_json(const ValidationReport& report) {
  return json{{"seed", report.seed},
              {"trials", report.trials},
              {"sign_disagreements", report.sign_disagreements},
              {"margin_band", report.margin_band},
              {"max_limit_error", report.max_limit_error}}
      .dump(2);
}

std::string to_json(const ExperimentResult& result) {
  json checks = json::array();
  for (const Check& c : result.checks)
    checks.push_back(json{{"name", c.name},
                          {"expected", c.expected},
                          {"actual", c.actual},
                          {"tolerance", c.tolerance},
                          {"source", c.source},
                          {"pass", c.pass}});
  return json{{"name", result.name},
              {"parameters", result.parameters},
              {"pass", result.pass()},
              {"runtime_seconds", result.runtime_seconds},
              {"notes", result.notes},
              {"checks", std::move(checks)}}
      .dump(2);
}

std::string to_json(const RegionScan& scan) {
  json points = json::array();
  for (const RegionPoint& pt : scan.points)
    points.push_back(json{{"q1", pt.q1},
                          {"q2", pt.q2},
                          {"uffink_lhs", pt.uffink_lhs},
                          {"envelope_lhs", pt.envelope_lhs},
                          {"envelope_eps", pt.envelope_eps},
                          {"uffink_ok", pt.uffink_ok},
                          {"envelope_ok", pt.envelope_ok},
                          {"tlm_ok", pt.tlm_ok}});
  return json{{"grid_step", scan.grid_step},
              {"envelope_outside_uffink", scan.envelope_outside_uffink},
              {"tlm_outside_envelope", scan.tlm_outside_envelope},
              {"max_row_mismatch", scan.max_row_mismatch},
              {"points", std::move(points)}}
      .dump(2);
}

std::string to_csv(const RegionScan& scan) {
  std::ostringstream out;
  out << "q1,q2,uffink_lhs,envelope_lhs,envelope_eps,tlm_quantum\n";
  out << std::setprecision(17);
  for (const RegionPoint& pt : scan.points)
    out << pt.q1 << ',' << pt.q2 << ',' << pt.uffink_lhs << ',' << pt.envelope_lhs
        << ',' << pt.envelope_eps << ',' << (pt.tlm_ok ? 1 : 0) << '\n';
  return out.str();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw DomainError("write to " + path + " failed");
}

}  // namespace icbell
