#include "fewnull/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fewnull {

namespace {

bool parse_index(const std::string& s, size_t& pos, int& out) {
    if (pos >= s.size() || s[pos] != 'x') return false;
    ++pos;
    size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) return false;
    out = std::stoi(s.substr(start, pos - start));
    return true;
}

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Monomial parse_monomial(const std::string& token) {
    std::string t = trimmed(token);
    if (t == "1") return Monomial::one();
    size_t pos = 0;
    int i = 0;
    if (!parse_index(t, pos, i)) throw std::runtime_error("bad monomial token: " + token);
    if (pos == t.size()) return Monomial::linear(i);
    if (t.compare(pos, 2, "^2") == 0 && pos + 2 == t.size()) return Monomial::square(i);
    if (t[pos] == '*') {
        ++pos;
        int j = 0;
        if (parse_index(t, pos, j) && pos == t.size()) {
            if (i == j) return Monomial::square(i);
            return Monomial::product(i, j);
        }
    }
    throw std::runtime_error("bad monomial token: " + token);
}

std::string format_monomial(const Monomial& m) {
    if (m.is_constant()) return "1";
    if (m.degree() == 1) return "x" + std::to_string(m.var(0));
    if (m.is_square()) return "x" + std::to_string(m.var(0)) + "^2";
    return "x" + std::to_string(m.var(0)) + "*x" + std::to_string(m.var(1));
}

void write_support(std::ostream& os, const Support& s) {
    for (const auto& m : s.monomials()) os << format_monomial(m) << '\n';
}

Support read_support(std::istream& is, int min_n) {
    std::vector<Monomial> mons;
    std::string line;
    int n = min_n;
    while (std::getline(is, line)) {
        line = trimmed(line);
        if (line.empty() || line[0] == '#') continue;
        Monomial m = parse_monomial(line);
        n = std::max(n, m.max_var());
        mons.push_back(m);
    }
    return Support(n, std::move(mons));
}

void write_system(std::ostream& os, const FewnomialSystem& sys) {
    os << sys.field.modulus() << ' ' << sys.support.n() << ' ' << sys.m() << '\n';
    write_support(os, sys.support);
    for (const auto& f : sys.polys) {
        auto row = f.to_dense(sys.support);
        for (size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
        os << '\n';
    }
}

FewnomialSystem read_system(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("read_system: empty file");
    std::istringstream header(line);
    uint64_t p = 0;
    int n = -1;
    int64_t m = -1;
    if (!(header >> p >> n >> m) || n < 0 || m < 1)
        throw std::runtime_error("read_system: bad header (want \"p n m\")");
    PrimeField field(p);

    // Support block: maximal prefix of lines that parse as fresh monomials.
    // A repeated or unparsable line starts the coefficient block, which is m
    // lines of |M| integers in the order the support block listed monomials.
    std::vector<Monomial> listed;
    std::vector<std::string> pending;
    while (std::getline(is, line)) {
        line = trimmed(line);
        if (line.empty() || line[0] == '#') continue;
        bool monomial_line = false;
        if (pending.empty() && line.find(' ') == std::string::npos) {
            try {
                Monomial mon = parse_monomial(line);
                if (std::find(listed.begin(), listed.end(), mon) == listed.end()) {
                    listed.push_back(mon);
                    if (mon.max_var() > n)
                        throw std::runtime_error("read_system: monomial index above n: " + line);
                    monomial_line = true;
                }
            } catch (const std::runtime_error& e) {
                if (std::string(e.what()).find("bad monomial") == std::string::npos) throw;
            }
        }
        if (!monomial_line) pending.push_back(line);
    }
    if (listed.empty()) throw std::runtime_error("read_system: missing support block");
    if (static_cast<int64_t>(pending.size()) != m)
        throw std::runtime_error("read_system: expected " + std::to_string(m) + " coefficient lines, got " +
                                 std::to_string(pending.size()));

    Support support(n, listed);
    std::vector<SparsePoly> polys;
    for (const auto& cl : pending) {
        std::istringstream ls(cl);
        std::vector<std::pair<Monomial, Fp>> terms;
        uint64_t c = 0;
        for (const auto& mon : listed) {
            if (!(ls >> c)) throw std::runtime_error("read_system: short coefficient line");
            if (c) terms.emplace_back(mon, field.from_uint(c));
        }
        uint64_t extra;
        if (ls >> extra) throw std::runtime_error("read_system: long coefficient line");
        polys.push_back(SparsePoly::from_terms(std::move(terms), field));
    }
    return FewnomialSystem(field, std::move(support), std::move(polys));
}

void write_certificate(std::ostream& os, const Certificate& cert, const Support& s) {
    for (const auto& h : cert.cofactors) {
        auto row = h.to_dense(s);
        for (size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
        os << '\n';
    }
}

Certificate read_certificate(std::istream& is, const Support& s, const PrimeField& field, int64_t m) {
    Certificate cert;
    std::string line;
    while (std::getline(is, line)) {
        line = trimmed(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<std::pair<Monomial, Fp>> terms;
        uint64_t c = 0;
        for (int64_t i = 0; i < s.size(); ++i) {
            if (!(ls >> c)) throw std::runtime_error("read_certificate: short line");
            if (c) terms.emplace_back(s[i], field.from_uint(c));
        }
        uint64_t extra;
        if (ls >> extra) throw std::runtime_error("read_certificate: long line");
        cert.cofactors.push_back(SparsePoly::from_terms(std::move(terms), field));
    }
    if (static_cast<int64_t>(cert.cofactors.size()) != m)
        throw std::runtime_error("read_certificate: expected " + std::to_string(m) + " rows");
    return cert;
}

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

}  // namespace

void write_support_file(const std::string& path, const Support& s) {
    auto f = open_out(path);
    write_support(f, s);
}

Support read_support_file(const std::string& path, int min_n) {
    auto f = open_in(path);
    return read_support(f, min_n);
}

void write_system_file(const std::string& path, const FewnomialSystem& sys) {
    auto f = open_out(path);
    write_system(f, sys);
}

FewnomialSystem read_system_file(const std::string& path) {
    auto f = open_in(path);
    return read_system(f);
}

void write_certificate_file(const std::string& path, const Certificate& cert, const Support& s) {
    auto f = open_out(path);
    write_certificate(f, cert, s);
}

Certificate read_certificate_file(const std::string& path, const Support& s, const PrimeField& field,
                                  int64_t m) {
    auto f = open_in(path);
    return read_certificate(f, s, field, m);
}

}  // namespace fewnull
