#pragma once

#include "qttdft/mps.hpp"
#include "qttdft/qft_mpo.hpp"

#include <string>
#include <variant>

namespace qttdft {

// File formats (JSON, doubles as shortest round-trip decimals):
//   qttdft-mpo-v1  {"format","n","d","kind","param","cores":[{"shape":[l,d,d,r],"data":[[re,im],...]}]}
//   qtt-vec-v1     {"format","n","d","order","data":[[re,im],...]}
//   qtt-mps-v1     {"format","n","d","order","cores":[{"shape":[l,d,r],"data":[[re,im],...]}]}

struct DenseVector {
    int n = 0;
    int d = 2;
    SignificanceOrder order = SignificanceOrder::LsbFirst;
    std::vector<cd> data;
};

using VectorFile = std::variant<DenseVector, Mps>;

std::string mpo_to_json(const Mpo& m);
Mpo mpo_from_json(const std::string& text);

std::string vector_to_json(const VectorFile& v);
VectorFile vector_from_json(const std::string& text);

void save_mpo(const Mpo& m, const std::string& path);
Mpo load_mpo(const std::string& path);

void save_vector(const VectorFile& v, const std::string& path);
VectorFile load_vector(const std::string& path);

} // namespace qttdft
