#include "qttdft/serialize.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace qttdft {

namespace {

using nlohmann::json;

json complex_array_to_json(std::span<const cd> data) {
    json arr = json::array();
    for (const cd& z : data)
        arr.push_back(json::array({z.real(), z.imag()}));
    return arr;
}

std::vector<cd> complex_array_from_json(const json& arr, const char* what) {
    if (!arr.is_array())
        throw std::invalid_argument(std::string(what) + ": expected an array of [re, im] pairs");
    std::vector<cd> out;
    out.reserve(arr.size());
    for (const json& item : arr) {
        if (!item.is_array() || item.size() != 2)
            throw std::invalid_argument(std::string(what) + ": malformed [re, im] pair");
        out.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return out;
}

json core_to_json(const ComplexTensor& core) {
    json j;
    j["shape"] = core.shape;
    j["data"] = complex_array_to_json(core.data);
    return j;
}

ComplexTensor core_from_json(const json& j, int rank, const char* what) {
    const std::vector<i64> shape = j.at("shape").get<std::vector<i64>>();
    if (static_cast<int>(shape.size()) != rank)
        throw std::invalid_argument(std::string(what) + ": core must have the documented rank");
    return ComplexTensor(shape, complex_array_from_json(j.at("data"), what));
}

SignificanceOrder order_from_string(const std::string& s) {
    if (s == "LSB_FIRST")
        return SignificanceOrder::LsbFirst;
    if (s == "MSB_FIRST")
        return SignificanceOrder::MsbFirst;
    throw std::invalid_argument("unknown significance order: " + s);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

} // namespace

std::string mpo_to_json(const Mpo& m) {
    validate_mpo(m);
    json j;
    j["format"] = "qttdft-mpo-v1";
    j["n"] = m.n;
    j["d"] = m.d;
    j["kind"] = to_string(m.kind);
    j["param"] = m.param;
    json cores = json::array();
    for (const ComplexTensor& c : m.cores)
        cores.push_back(core_to_json(c));
    j["cores"] = std::move(cores);
    return j.dump();
}

Mpo mpo_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != "qttdft-mpo-v1")
        throw std::invalid_argument("mpo_from_json: not a qttdft-mpo-v1 file");
    Mpo m;
    m.n = j.at("n").get<int>();
    m.d = j.at("d").get<int>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "chebyshev")
        m.kind = MpoKind::Chebyshev;
    else if (kind == "aqft")
        m.kind = MpoKind::Aqft;
    else
        throw std::invalid_argument("mpo_from_json: unknown kind " + kind);
    m.param = j.at("param").get<int>();
    for (const json& c : j.at("cores"))
        m.cores.push_back(core_from_json(c, 4, "mpo_from_json"));
    validate_mpo(m);
    return m;
}

std::string vector_to_json(const VectorFile& v) {
    json j;
    if (const DenseVector* dense = std::get_if<DenseVector>(&v)) {
        j["format"] = "qtt-vec-v1";
        j["n"] = dense->n;
        j["d"] = dense->d;
        j["order"] = to_string(dense->order);
        j["data"] = complex_array_to_json(dense->data);
    } else {
        const Mps& m = std::get<Mps>(v);
        validate_mps(m);
        j["format"] = "qtt-mps-v1";
        j["n"] = m.n;
        j["d"] = m.d;
        j["order"] = to_string(m.order);
        json cores = json::array();
        for (const ComplexTensor& c : m.cores)
            cores.push_back(core_to_json(c));
        j["cores"] = std::move(cores);
    }
    return j.dump();
}

VectorFile vector_from_json(const std::string& text) {
    const json j = json::parse(text);
    const std::string format = j.at("format").get<std::string>();
    if (format == "qtt-vec-v1") {
        DenseVector out;
        out.n = j.at("n").get<int>();
        out.d = j.at("d").get<int>();
        out.order = order_from_string(j.at("order").get<std::string>());
        out.data = complex_array_from_json(j.at("data"), "qtt-vec-v1");
        i64 expect = 1;
        for (int k = 0; k < out.n; ++k)
            expect *= out.d;
        if (expect != static_cast<i64>(out.data.size()))
            throw std::invalid_argument("qtt-vec-v1: data length must be d^n");
        return out;
    }
    if (format == "qtt-mps-v1") {
        Mps m;
        m.n = j.at("n").get<int>();
        m.d = j.at("d").get<int>();
        m.order = order_from_string(j.at("order").get<std::string>());
        for (const json& c : j.at("cores"))
            m.cores.push_back(core_from_json(c, 3, "qtt-mps-v1"));
        validate_mps(m);
        return m;
    }
    throw std::invalid_argument("vector_from_json: unknown format " + format);
}

void save_mpo(const Mpo& m, const std::string& path) { write_file(path, mpo_to_json(m)); }

Mpo load_mpo(const std::string& path) { return mpo_from_json(read_file(path)); }

void save_vector(const VectorFile& v, const std::string& path) {
    write_file(path, vector_to_json(v));
}

VectorFile load_vector(const std::string& path) { return vector_from_json(read_file(path)); }

} // namespace qttdft
