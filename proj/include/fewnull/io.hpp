#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fewnull/poly.hpp"

namespace fewnull {

/// Monomial token grammar: "1", "xi", "xi^2", "xi*xj" with 0-based indices.
Monomial parse_monomial(const std::string& token);
std::string format_monomial(const Monomial& m);

/// Support file: one monomial per line, written in support (sorted) order.
void write_support(std::ostream& os, const Support& s);
/// Reads every line as a monomial; n is the largest index seen unless a
/// larger n is forced.
Support read_support(std::istream& is, int min_n = 0);

/// System file: header "p n m", the support block, then m coefficient lines
/// of |M| integers each in the order the support block lists monomials.
void write_system(std::ostream& os, const FewnomialSystem& sys);
FewnomialSystem read_system(std::istream& is);

/// Certificate file: m lines of |M| integers (cofactor coefficients in
/// support order).
void write_certificate(std::ostream& os, const Certificate& cert, const Support& s);
Certificate read_certificate(std::istream& is, const Support& s, const PrimeField& field, int64_t m);

/// File-based convenience wrappers; throw std::runtime_error on I/O failure.
void write_support_file(const std::string& path, const Support& s);
Support read_support_file(const std::string& path, int min_n = 0);
void write_system_file(const std::string& path, const FewnomialSystem& sys);
FewnomialSystem read_system_file(const std::string& path);
void write_certificate_file(const std::string& path, const Certificate& cert, const Support& s);
Certificate read_certificate_file(const std::string& path, const Support& s, const PrimeField& field,
                                  int64_t m);

}  // namespace fewnull
