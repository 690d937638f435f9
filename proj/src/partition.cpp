#include "avgent/partition.hpp"
#include "avgent/errors.hpp"

#include <algorithm>
#include <charconv>

namespace avgent {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

template <typename T>
T parse_unsigned(std::string_view token, std::string_view context) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
        throw InvalidArgument("cannot parse '" + std::string(token) + "' in " + std::string(context));
    return value;
}

} // namespace

FactorList::FactorList(std::vector<std::uint64_t> dims) : dims_(std::move(dims)), total_(1) {
    if (dims_.empty()) throw InvalidArgument("a factor list needs at least one factor");
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i] == 0) throw InvalidArgument("factor " + std::to_string(i) + " has dimension 0");
        total_ *= dims_[i];
    }
}

FactorList FactorList::parse(std::string_view text) {
    std::vector<std::uint64_t> dims;
    for (auto tok : split(text, 'x')) dims.push_back(parse_unsigned<std::uint64_t>(tok, "dimensions '" + std::string(text) + "'"));
    return FactorList(std::move(dims));
}

std::string FactorList::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(dims_[i]);
    }
    return s;
}

Selector::Selector(const FactorList& factors, std::vector<std::size_t> indices)
    : indices_(std::move(indices)), kept_(1), factor_count_(factors.size()) {
    std::sort(indices_.begin(), indices_.end());
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        if (indices_[k] >= factors.size())
            throw InvalidArgument("selector index " + std::to_string(indices_[k]) + " out of range for " +
                                  std::to_string(factors.size()) + " factors");
        if (k > 0 && indices_[k] == indices_[k - 1])
            throw InvalidArgument("selector index " + std::to_string(indices_[k]) + " repeated");
        kept_ *= factors[indices_[k]];
    }
    complement_ = factors.total() / kept_;
}

Selector Selector::parse(const FactorList& factors, std::string_view text) {
    std::vector<std::size_t> idx;
    if (!text.empty())
        for (auto tok : split(text, ',')) idx.push_back(parse_unsigned<std::size_t>(tok, "selector '" + std::string(text) + "'"));
    return Selector(factors, std::move(idx));
}

bool Selector::contains(std::size_t i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

Selector Selector::complement(const FactorList& factors) const {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (!contains(i)) rest.push_back(i);
    return Selector(factors, std::move(rest));
}

Selector Selector::united(const FactorList& factors, const Selector& other) const {
    std::vector<std::size_t> all;
    std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                   std::back_inserter(all));
    return Selector(factors, std::move(all));
}

std::string Selector::to_string() const {
    std::string s;
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(indices_[k]);
    }
    return s;
}

CollectionDims collection_dims(const FactorList& factors, const Selector& sel) {
    if (sel.factor_count() != factors.size())
        throw InvalidArgument("selector was built for " + std::to_string(sel.factor_count()) + " factors, not " +
                              std::to_string(factors.size()));
    return {sel.kept_dim(), sel.complement_dim()};
}

MinMaxSplit min_max_split(const BigInt& kept_dim, const BigInt& total) {
    if (kept_dim < 1 || total < 1 || total % kept_dim != 0)
        throw InvalidArgument(kept_dim.str() + " does not divide " + total.str());
    BigInt other = total / kept_dim;
    return kept_dim <= other ? MinMaxSplit{kept_dim, other} : MinMaxSplit{other, kept_dim};
}

bool disjoint(const Selector& a, const Selector& b) {
    for (auto i : a.indices())
        if (b.contains(i)) return false;
    return true;
}

} // namespace avgent
