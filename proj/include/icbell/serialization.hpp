#pragma once

#include <string>

#include "icbell/experiments.hpp"
#include "icbell/inequality.hpp"
#include "icbell/nsbox.hpp"
#include "icbell/oracle.hpp"
#include "icbell/protocol.hpp"

namespace icbell {

// JSON round trip. Schemas:
//   box        {"n_a","n_b","d_a","d_b","p":[alpha][beta][a][b]}
//   biases     {"n_a","n_b","d","e":[j][i][k]}
//   protocol   {"n","d","n_alpha","f","h","r"}  (n_alpha optional on input)
//   inequality {"family","params","n_a","n_b","d","bound","coeffs":[i][j*d+m]
//               with each coefficient as [re, im]}
std::string to_json(const NSBox& box);
std::string to_json(const BiasTable& t);
std::string to_json(const Protocol& p);
std::string to_json(const QuadraticInequality& q);
std::string to_json(const Evaluation& ev);
std::string to_json(const ICEvaluation& ev);
std::string to_json(const ValidationReport& report);
std::string to_json(const ExperimentResult& result);
std::string to_json(const RegionScan& scan);

NSBox box_from_json(const std::string& text);
BiasTable bias_table_from_json(const std::string& text);
Protocol protocol_from_json(const std::string& text);
QuadraticInequality inequality_from_json(const std::string& text);

// One row per grid point: q1,q2,uffink_lhs,envelope_lhs,envelope_eps,tlm_quantum.
std::string to_csv(const RegionScan& scan);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace icbell
