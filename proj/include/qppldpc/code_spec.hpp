#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qppldpc/qpp.hpp"
#include "qppldpc/tanner.hpp"

namespace qppldpc {

/// JSON code description: {lambda, rho, n, k_expected?, N, f1, f2, name}.
struct CodeSpec {
    std::string name;
    std::int64_t lambda = 0;
    std::int64_t rho = 0;
    std::int64_t n = 0;
    std::optional<std::int64_t> k_expected;
    std::int64_t edges = 0;  // N
    std::int64_t f1 = 0;
    std::int64_t f2 = 0;

    CodeProfile profile() const;
    Qpp qpp() const;
    void validate() const;  // throws std::invalid_argument naming the bad field
};

CodeSpec load_code_spec(const std::string& path);
void save_code_spec(const CodeSpec& spec, const std::string& path);
CodeSpec parse_code_spec(const std::string& text);  // from a JSON string

}  // namespace qppldpc
