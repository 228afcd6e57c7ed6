#include "apm/matching.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "apm/errors.hpp"

namespace apm {

Matching::Matching(std::uint32_t n, std::vector<VertexPair> pairs) : n_(n), pairs_(std::move(pairs)) {
    if (2 * pairs_.size() > n_) {
        throw validation_error("Matching: 2m > n");
    }
    for (auto& [i, j] : pairs_) {
        if (i > j) std::swap(i, j);
        if (i == j) throw validation_error("Matching: pair with equal endpoints");
        if (j >= n_) throw validation_error("Matching: vertex index out of range");
    }
    std::sort(pairs_.begin(), pairs_.end());
    std::vector<std::uint32_t> endpoints;
    endpoints.reserve(2 * pairs_.size());
    for (const auto& [i, j] : pairs_) {
        endpoints.push_back(i);
        endpoints.push_back(j);
    }
    std::sort(endpoints.begin(), endpoints.end());
    if (std::adjacent_find(endpoints.begin(), endpoints.end()) != endpoints.end()) {
        throw validation_error("Matching: endpoints are not distinct");
    }
}

int Matching::find_pair(std::uint32_t i, std::uint32_t j) const {
    if (i > j) std::swap(i, j);
    for (std::size_t l = 0; l < pairs_.size(); ++l) {
        if (pairs_[l].first == i && pairs_[l].second == j) return static_cast<int>(l);
    }
    return -1;
}

Matching Matching::parse(std::uint32_t n, const std::string& text) {
    std::vector<VertexPair> pairs;
    std::stringstream ss(text);
    std::string chunk;
    while (std::getline(ss, chunk, ';')) {
        if (chunk.find_first_not_of(" \t") == std::string::npos) continue;
        std::istringstream ps(chunk);
        std::int64_t i = -1, j = -1;
        if (!(ps >> i >> j) || i < 0 || j < 0) {
            throw validation_error("Matching::parse: expected \"i j\" in chunk '" + chunk + "'");
        }
        std::string rest;
        if (ps >> rest) throw validation_error("Matching::parse: trailing tokens in '" + chunk + "'");
        pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
    return Matching(n, std::move(pairs));
}

std::string Matching::to_string() const {
    std::string out;
    for (std::size_t l = 0; l < pairs_.size(); ++l) {
        if (l) out += ';';
        out += std::to_string(pairs_[l].first);
        out += ' ';
        out += std::to_string(pairs_[l].second);
    }
    return out;
}

bool Matching::operator<(const Matching& other) const {
    if (n_ != other.n_) return n_ < other.n_;
    return pairs_ < other.pairs_;
}

Matching read_matching_file(const std::string& path, std::uint32_t n) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open matching file: " + path);
    std::vector<VertexPair> pairs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ps(line);
        std::int64_t i = -1, j = -1;
        if (!(ps >> i >> j) || i < 0 || j < 0) {
            throw validation_error("matching file: bad line '" + line + "'");
        }
        pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
    return Matching(n, std::move(pairs));
}

void write_matching_file(const std::string& path, const Matching& matching) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open matching file for writing: " + path);
    for (const auto& [i, j] : matching.pairs()) {
        out << i << ' ' << j << '\n';
    }
    if (!out) throw io_error("failed writing matching file: " + path);
}

}  // namespace apm
