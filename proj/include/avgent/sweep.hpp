#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace avgent::sweep {

/// A rendered table; every cell is already formatted at the requested precision.
struct Table {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/// S_{m,M} against ln m along M = m 2^k, k = 0..k_max.
Table entropy_limit(std::uint64_t m, unsigned k_max, unsigned digits);

/// <tau>_{m,M} against 2(1 - 1/m) along M = m 2^k.
Table tangle_limit(std::uint64_t m, unsigned k_max, unsigned digits);

/// Exact <I_{A:B}> and its bound for n_C = n_A n_B .. nc_max.
Table mutual_info_environment(std::uint64_t na, std::uint64_t nb, std::uint64_t nc_max, unsigned digits);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);
std::string to_text(const Table& t);

} // namespace avgent::sweep
