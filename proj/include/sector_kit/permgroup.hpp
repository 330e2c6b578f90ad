#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace sector_kit {

// Element of S_N. Internally 0-based: p(i) is the image of slot i. Acting on
// tensors, p moves the content of slot i to slot p(i). Composition is
// (p * q)(i) = p(q(i)), i.e. q is applied first.
class Permutation {
  public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)])
                throw DomainError("Permutation: images are not a bijection of {0..N-1}");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(static_cast<std::size_t>(n));
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    // 1-based image list, as printed in the literature: {2,1,3} swaps 1 and 2.
    static Permutation from_one_based(const std::vector<int> &images) {
        std::vector<int> im(images);
        for (int &v : im)
            --v;
        return Permutation(std::move(im));
    }

    // Transposition of the 1-based labels i and j.
    static Permutation transposition(int n, int i, int j) {
        Permutation p = identity(n);
        if (i < 1 || j < 1 || i > n || j > n)
            throw DomainError("transposition: label out of range");
        std::swap(p.images_[static_cast<std::size_t>(i - 1)], p.images_[static_cast<std::size_t>(j - 1)]);
        return p;
    }

    // Cycle notation with 1-based labels: "(12)", "(1 3)(2 4)", "(1,2,3)", "e".
    // Labels without separators are read digit by digit.
    static Permutation from_cycles(int n, std::string_view text) {
        std::vector<int> im(static_cast<std::size_t>(n));
        std::iota(im.begin(), im.end(), 0);
        std::size_t pos = 0;
        auto bad = [&] { return DomainError("from_cycles: cannot parse '" + std::string(text) + "'"); };
        while (pos < text.size()) {
            const char c = text[pos];
            if (std::isspace(static_cast<unsigned char>(c)) || c == 'e') {
                ++pos;
                continue;
            }
            if (c != '(')
                throw bad();
            const std::size_t close = text.find(')', pos);
            if (close == std::string_view::npos)
                throw bad();
            const std::string body(text.substr(pos + 1, close - pos - 1));
            pos = close + 1;
            std::vector<int> cycle;
            const bool separated = body.find_first_of(" ,") != std::string::npos;
            if (separated) {
                std::string token;
                std::istringstream in(body);
                while (std::getline(in, token, body.find(',') != std::string::npos ? ',' : ' ')) {
                    token.erase(std::remove_if(token.begin(), token.end(),
                                               [](unsigned char ch) { return std::isspace(ch); }),
                                token.end());
                    if (token.empty())
                        continue;
                    if (!std::all_of(token.begin(), token.end(), [](unsigned char ch) { return std::isdigit(ch); }))
                        throw bad();
                    cycle.push_back(std::stoi(token));
                }
            } else {
                for (char d : body) {
                    if (!std::isdigit(static_cast<unsigned char>(d)))
                        throw bad();
                    cycle.push_back(d - '0');
                }
            }
            for (int v : cycle)
                if (v < 1 || v > n)
                    throw DomainError("from_cycles: label out of range in '" + std::string(text) + "'");
            // (a b c): a -> b -> c -> a
            std::vector<int> cyc(static_cast<std::size_t>(n));
            std::iota(cyc.begin(), cyc.end(), 0);
            for (std::size_t k = 0; k < cycle.size(); ++k)
                cyc[static_cast<std::size_t>(cycle[k] - 1)] = cycle[(k + 1) % cycle.size()] - 1;
            // the rightmost cycle acts first
            std::vector<int> next(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                next[static_cast<std::size_t>(i)] = im[static_cast<std::size_t>(cyc[static_cast<std::size_t>(i)])];
            im = std::move(next);
        }
        return Permutation(std::move(im));
    }

    int degree() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int> &images() const { return images_; }

    Permutation operator*(const Permutation &rhs) const {
        if (rhs.degree() != degree())
            throw DomainError("Permutation: composing different degrees");
        std::vector<int> im(images_.size());
        for (std::size_t i = 0; i < im.size(); ++i)
            im[i] = images_[static_cast<std::size_t>(rhs.images_[i])];
        return Permutation(std::move(im));
    }

    Permutation inverse() const {
        std::vector<int> im(images_.size());
        for (std::size_t i = 0; i < im.size(); ++i)
            im[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
        return Permutation(std::move(im));
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < images_.size(); ++i)
            if (images_[i] != static_cast<int>(i))
                return false;
        return true;
    }

    int inversions() const {
        int count = 0;
        for (std::size_t a = 0; a < images_.size(); ++a)
            for (std::size_t b = a + 1; b < images_.size(); ++b)
                if (images_[a] > images_[b])
                    ++count;
        return count;
    }

    int sign() const { return inversions() % 2 == 0 ? 1 : -1; }

    // Cycle lengths, non-increasing (the conjugacy class label).
    std::vector<int> cycle_type() const {
        std::vector<bool> seen(images_.size(), false);
        std::vector<int> lengths;
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (seen[i])
                continue;
            int len = 0;
            for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
                seen[j] = true;
                ++len;
            }
            lengths.push_back(len);
        }
        std::sort(lengths.rbegin(), lengths.rend());
        return lengths;
    }

    // 1-based cycle notation without fixed points; "e" for the identity.
    std::string to_string() const {
        std::string out;
        std::vector<bool> seen(images_.size(), false);
        const bool wide = degree() > 9;
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (seen[i] || images_[i] == static_cast<int>(i))
                continue;
            out += '(';
            bool first = true;
            for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
                seen[j] = true;
                if (!first && wide)
                    out += ' ';
                out += std::to_string(j + 1);
                first = false;
            }
            out += ')';
        }
        return out.empty() ? "e" : out;
    }

    // Word i_1..i_k with p = s_{i_1} * ... * s_{i_k}, s_i the transposition
    // of 0-based slots i and i+1. Length equals the inversion number.
    std::vector<int> adjacent_word() const {
        std::vector<int> word;
        std::vector<int> im = images_;
        std::vector<int> pos(im.size());
        auto refresh = [&] {
            for (std::size_t i = 0; i < im.size(); ++i)
                pos[static_cast<std::size_t>(im[i])] = static_cast<int>(i);
        };
        refresh();
        for (;;) {
            int found = -1;
            for (std::size_t v = 0; v + 1 < im.size(); ++v)
                if (pos[v] > pos[v + 1]) {
                    found = static_cast<int>(v);
                    break;
                }
            if (found < 0)
                break;
            // left-multiply by s_found: swap the values found and found+1
            std::swap(im[static_cast<std::size_t>(pos[static_cast<std::size_t>(found)])],
                      im[static_cast<std::size_t>(pos[static_cast<std::size_t>(found) + 1])]);
            refresh();
            word.push_back(found);
        }
        return word;
    }

    auto operator<=>(const Permutation &) const = default;

  private:
    std::vector<int> images_;
};

// All of S_N in lexicographic order of image lists (identity first).
inline std::vector<Permutation> all_permutations(int n) {
    if (n < 1)
        throw DomainError("all_permutations: N must be positive");
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

template <class Rng> Permutation random_permutation(int n, Rng &rng) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    std::shuffle(im.begin(), im.end(), rng);
    return Permutation(std::move(im));
}

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k)
        f *= static_cast<std::uint64_t>(k);
    return f;
}

class Partition {
  public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty())
            throw DomainError("Partition: no parts");
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0)
                throw DomainError("Partition: parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw DomainError("Partition: parts must be non-increasing");
        }
    }

    // "2,1", "(2,1)", "2 1" or "21" (digit per part).
    static Partition parse(std::string_view text) {
        std::vector<int> parts;
        std::string token;
        const bool separated = text.find_first_of(", ") != std::string_view::npos;
        for (char c : text) {
            if (std::isdigit(static_cast<unsigned char>(c))) {
                if (separated)
                    token += c;
                else
                    parts.push_back(c - '0');
            } else if (c == ',' || c == ' ') {
                if (!token.empty())
                    parts.push_back(std::stoi(token));
                token.clear();
            } else if (c != '(' && c != ')') {
                throw DomainError("Partition: cannot parse '" + std::string(text) + "'");
            }
        }
        if (!token.empty())
            parts.push_back(std::stoi(token));
        return Partition(std::move(parts));
    }

    const std::vector<int> &parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int operator[](int row) const { return parts_[static_cast<std::size_t>(row)]; }

    // Column lengths.
    Partition conjugate() const {
        std::vector<int> cols(static_cast<std::size_t>(parts_.front()), 0);
        for (int len : parts_)
            for (int c = 0; c < len; ++c)
                ++cols[static_cast<std::size_t>(c)];
        return Partition(std::move(cols));
    }

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(parts_[i]);
        }
        return out + ")";
    }

    auto operator<=>(const Partition &) const = default;

  private:
    std::vector<int> parts_;
};

// All partitions of n, reverse-lexicographic: (n) first, (1,...,1) last.
inline std::vector<Partition> enumerate_partitions(int n) {
    if (n < 1)
        throw DomainError("enumerate_partitions: N must be positive");
    std::vector<Partition> out;
    std::vector<int> current;
    auto rec = [&](auto &self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (int part = std::min(remaining, max_part); part >= 1; --part) {
            current.push_back(part);
            self(self, remaining - part, part);
            current.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// N_lambda from the hook-length formula.
inline std::uint64_t hook_dimension(const Partition &shape) {
    const Partition cols = shape.conjugate();
    std::uint64_t hooks = 1;
    for (int r = 0; r < shape.length(); ++r)
        for (int c = 0; c < shape[r]; ++c)
            hooks *= static_cast<std::uint64_t>((shape[r] - c - 1) + (cols[c] - r - 1) + 1);
    return factorial(shape.total()) / hooks;
}

// A filling of a Young frame with the labels 1..N (rows top to bottom).
class Tableau {
  public:
    Tableau() = default;

    explicit Tableau(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
        std::vector<int> lengths;
        for (const auto &row : rows_)
            lengths.push_back(static_cast<int>(row.size()));
        shape_ = Partition(lengths);
        const int n = shape_.total();
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (const auto &row : rows_)
            for (int v : row) {
                if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
                    throw DomainError("Tableau: entries must be 1..N, each once");
                seen[static_cast<std::size_t>(v - 1)] = true;
            }
    }

    const Partition &shape() const { return shape_; }
    const std::vector<std::vector<int>> &rows() const { return rows_; }
    int size() const { return shape_.total(); }

    std::vector<std::vector<int>> columns() const {
        std::vector<std::vector<int>> cols(static_cast<std::size_t>(shape_[0]));
        for (const auto &row : rows_)
            for (std::size_t c = 0; c < row.size(); ++c)
                cols[c].push_back(row[c]);
        return cols;
    }

    bool is_standard() const {
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (std::size_t c = 0; c < rows_[r].size(); ++c) {
                if (c > 0 && rows_[r][c] <= rows_[r][c - 1])
                    return false;
                if (r > 0 && rows_[r][c] <= rows_[r - 1][c])
                    return false;
            }
        return true;
    }

    // (row, column) of label v, 0-based.
    std::pair<int, int> position(int v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (std::size_t c = 0; c < rows_[r].size(); ++c)
                if (rows_[r][c] == v)
                    return {static_cast<int>(r), static_cast<int>(c)};
        throw DomainError("Tableau: label not present");
    }

    // Column index minus row index of the box holding v.
    int content(int v) const {
        const auto [r, c] = position(v);
        return c - r;
    }

    // Swap the labels a and b.
    Tableau swapped(int a, int b) const {
        auto rows = rows_;
        for (auto &row : rows)
            for (int &v : row) {
                if (v == a)
                    v = b;
                else if (v == b)
                    v = a;
            }
        return Tableau(std::move(rows));
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            out += r ? "|" : "";
            for (std::size_t c = 0; c < rows_[r].size(); ++c)
                out += (c ? "," : "") + std::to_string(rows_[r][c]);
        }
        return out;
    }

    auto operator<=>(const Tableau &other) const { return rows_ <=> other.rows_; }
    bool operator==(const Tableau &other) const { return rows_ == other.rows_; }

  private:
    Partition shape_;
    std::vector<std::vector<int>> rows_;
};

// Standard tableaux of the given shape, sorted lexicographically by rows.
inline std::vector<Tableau> standard_tableaux(const Partition &shape) {
    const int n = shape.total();
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(shape.length()));
    std::vector<Tableau> out;
    // place 1, 2, ... into boxes whose upper neighbour is already filled
    auto rec = [&](auto &self, int next) -> void {
        if (next > n) {
            out.emplace_back(rows);
            return;
        }
        for (int r = 0; r < shape.length(); ++r) {
            auto &row = rows[static_cast<std::size_t>(r)];
            if (static_cast<int>(row.size()) >= shape[r])
                continue;
            if (r > 0 && rows[static_cast<std::size_t>(r - 1)].size() <= row.size())
                continue;
            row.push_back(next);
            self(self, next + 1);
            row.pop_back();
        }
    };
    rec(rec, 1);
    std::sort(out.begin(), out.end());
    return out;
}

// All permutations of S_N mapping every block (1-based labels) onto itself.
inline std::vector<Permutation> block_stabilizer(int n, const std::vector<std::vector<int>> &blocks) {
    std::vector<Permutation> out{Permutation::identity(n)};
    for (const auto &block : blocks) {
        std::vector<int> sorted(block);
        std::sort(sorted.begin(), sorted.end());
        std::vector<Permutation> local;
        std::vector<int> arrangement(sorted);
        do {
            std::vector<int> im(static_cast<std::size_t>(n));
            std::iota(im.begin(), im.end(), 0);
            for (std::size_t k = 0; k < sorted.size(); ++k)
                im[static_cast<std::size_t>(sorted[k] - 1)] = arrangement[k] - 1;
            local.emplace_back(std::move(im));
        } while (std::next_permutation(arrangement.begin(), arrangement.end()));
        std::vector<Permutation> next;
        next.reserve(out.size() * local.size());
        for (const auto &p : out)
            for (const auto &q : local)
                next.push_back(p * q);
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct RowColumnGroups {
    std::vector<Permutation> row;
    std::vector<Permutation> column;
};

inline RowColumnGroups row_col_groups(const Tableau &t) {
    return {block_stabilizer(t.size(), t.rows()), block_stabilizer(t.size(), t.columns())};
}

// Young's orthogonal form of the irreducible representation labelled by a
// partition: real orthogonal matrices in the basis of standard tableaux.
// The adjacent transposition s_i (labels i, i+1) acts as
//   s_i e_T = (1/r) e_T + sqrt(1 - 1/r^2) e_{s_i T},
// r = content(i+1) - content(i) in T. Other elements are built from
// their reduced words.
class IrrepMatrices {
  public:
    explicit IrrepMatrices(const Partition &shape) : shape_(shape), tableaux_(standard_tableaux(shape)) {
        const int n = shape.total();
        const auto dim = static_cast<linalg::Index>(tableaux_.size());
        for (int i = 1; i < n; ++i) {
            linalg::Matrix g = linalg::Matrix::Zero(dim, dim);
            for (linalg::Index a = 0; a < dim; ++a) {
                const Tableau &t = tableaux_[static_cast<std::size_t>(a)];
                const int r = t.content(i + 1) - t.content(i);
                g(a, a) = 1.0 / r;
                if (std::abs(r) == 1)
                    continue;
                const Tableau swapped = t.swapped(i, i + 1);
                const auto it = std::lower_bound(tableaux_.begin(), tableaux_.end(), swapped);
                if (it == tableaux_.end() || !(*it == swapped))
                    throw ConsistencyError("IrrepMatrices: swapped tableau is not standard");
                g(std::distance(tableaux_.begin(), it), a) = std::sqrt(1.0 - 1.0 / (double(r) * r));
            }
            generators_.push_back(std::move(g));
        }
    }

    const Partition &shape() const { return shape_; }
    const std::vector<Tableau> &basis() const { return tableaux_; }
    linalg::Index dimension() const { return static_cast<linalg::Index>(tableaux_.size()); }
    int degree() const { return shape_.total(); }

    // Matrix of s_i (0-based: swaps slots i and i+1).
    const linalg::Matrix &generator(int i) const { return generators_[static_cast<std::size_t>(i)]; }

    linalg::Matrix matrix(const Permutation &p) const {
        if (p.degree() != degree())
            throw DomainError("IrrepMatrices: permutation degree differs from partition size");
        linalg::Matrix m = linalg::identity(dimension());
        for (int i : p.adjacent_word())
            m = m * generators_[static_cast<std::size_t>(i)];
        return m;
    }

    double character(const Permutation &p) const { return matrix(p).trace().real(); }

  private:
    Partition shape_;
    std::vector<Tableau> tableaux_;
    std::vector<linalg::Matrix> generators_;
};

inline IrrepMatrices irrep(const Partition &shape) { return IrrepMatrices(shape); }

inline double character(const Partition &shape, const Permutation &p) {
    if (p.degree() != shape.total())
        throw DomainError("character: permutation degree differs from partition size");
    return IrrepMatrices(shape).character(p);
}

} // namespace sector_kit
