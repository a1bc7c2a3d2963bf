#include "pigas/coloring.hpp"

#include "pigas/error.hpp"
#include "pigas/spectral.hpp"
#include "first_index.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>

namespace pigas {

std::string_view to_string(Color c) {
    switch (c) {
    case Color::Black: return "black";
    case Color::Blue: return "blue";
    case Color::Red: return "red";
    case Color::White: return "white";
    }
    return "?";
}

Color color_from_string(std::string_view name) {
    if (name == "black") return Color::Black;
    if (name == "blue") return Color::Blue;
    if (name == "red") return Color::Red;
    if (name == "white") return Color::White;
    throw Error(ErrorCode::Parse, "unknown color '" + std::string(name) + "'");
}

std::string_view to_string(BalanceClass c) {
    switch (c) {
    case BalanceClass::PoorlyBalanced: return "poorly-balanced";
    case BalanceClass::RichlyBalanced: return "richly-balanced";
    case BalanceClass::Unbalanced: return "unbalanced";
    case BalanceClass::PoorlyIndefinite: return "poorly-indefinite";
    case BalanceClass::RichlyIndefinite: return "richly-indefinite";
    case BalanceClass::BlackForcing: return "black-forcing";
    case BalanceClass::ColorForcing: return "color-forcing";
    }
    return "?";
}

NeighborCounts count_neighbors(std::span<const NodeId> neighbors, const Coloring& c) {
    NeighborCounts k;
    for (NodeId j : neighbors) {
        switch (c[j]) {
        case Color::Black: ++k.black; break;
        case Color::White: ++k.white; break;
        case Color::Blue: ++k.blue; break;
        case Color::Red: ++k.red; break;
        }
    }
    return k;
}

BalanceClass classify_counts(const NeighborCounts& k) {
    const bool blue = k.blue > 0;
    const bool red = k.red > 0;
    if (blue && red) return BalanceClass::RichlyBalanced;
    const bool one_color = blue || red;
    if (k.white == 0) return one_color ? BalanceClass::Unbalanced : BalanceClass::PoorlyBalanced;
    if (k.white == 1) return one_color ? BalanceClass::ColorForcing : BalanceClass::BlackForcing;
    return one_color ? BalanceClass::RichlyIndefinite : BalanceClass::PoorlyIndefinite;
}

BalanceClass classify_black(const DampingGraph& g, const Coloring& c, NodeId i) {
    if (i >= g.node_count()) throw Error(ErrorCode::NodeOutOfRange, "node " + std::to_string(i));
    if (c[i] != Color::Black) {
        throw Error(ErrorCode::NotBlack, "node " + std::to_string(i) + " is " + std::string(to_string(c[i])));
    }
    return classify_counts(count_neighbors(g.neighbors(i), c));
}

namespace {

void check_size(const DampingGraph& g, const Coloring& c) {
    if (c.size() != g.node_count()) {
        throw Error(ErrorCode::InvalidParams, "coloring has " + std::to_string(c.size()) + " entries, graph has " +
                                                  std::to_string(g.node_count()) + " nodes");
    }
}

void check_complete(const Coloring& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == Color::White) throw Error(ErrorCode::IncompleteColoring, "node " + std::to_string(i) + " is white");
    }
}

bool damped_black(const DampingGraph& g, const Coloring& c) {
    return std::all_of(g.damped_nodes().begin(), g.damped_nodes().end(),
                       [&](NodeId d) { return c[d] == Color::Black; });
}

}  // namespace

bool is_balanced(const DampingGraph& g, const Coloring& c) {
    check_size(g, c);
    check_complete(c);
    for (NodeId i = 0; i < g.node_count(); ++i) {
        if (c[i] == Color::Black && classify_black(g, c, i) == BalanceClass::Unbalanced) return false;
    }
    return true;
}

bool is_richly_balanced(const DampingGraph& g, const Coloring& c) {
    check_size(g, c);
    check_complete(c);
    if (!damped_black(g, c)) return false;

    bool any_rich = false;
    bool any_unbalanced = false;
    bool any_colored = false;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        if (c[i] != Color::Black) {
            any_colored = true;
            continue;
        }
        const auto cls = classify_black(g, c, i);
        any_rich = any_rich || cls == BalanceClass::RichlyBalanced;
        any_unbalanced = any_unbalanced || cls == BalanceClass::Unbalanced;
    }
    const bool by_classes = any_rich && !any_unbalanced;
    const bool by_colored = any_colored && !any_unbalanced;
    if (by_classes != by_colored) throw std::logic_error("rich balance formulations disagree");
    return by_classes;
}

namespace {

// Enumeration over the undamped nodes with neighbour bitmasks. Digit k of
// the combination index colours undamped node k, most significant first.
class Enumerator {
public:
    explicit Enumerator(const DampingGraph& g) : g_(g), nu_(g.undamped_count()) {
        const std::size_t n = g.node_count();
        words_ = (n + 63) / 64;
        masks_.assign(n * words_, 0);
        for (NodeId i = 0; i < n; ++i) {
            for (NodeId j : g.neighbors(i)) masks_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
        }
        pow3_.assign(nu_ + 1, 1);
        for (std::size_t k = 1; k <= nu_; ++k) pow3_[k] = pow3_[k - 1] * 3;
    }

    std::uint64_t total() const { return pow3_[nu_]; }
    std::size_t undamped() const { return nu_; }

    // Colours of the undamped nodes for combination `index`.
    void decode(std::uint64_t index, std::vector<std::uint8_t>& digits) const {
        digits.assign(nu_, 0);
        for (std::size_t k = nu_; k-- > 0;) {
            digits[k] = static_cast<std::uint8_t>(index % 3);
            index /= 3;
        }
    }

    // 0 = unbalanced somewhere, 1 = balanced but not richly, 2 = richly balanced.
    int evaluate(const std::vector<std::uint8_t>& digits, std::vector<std::uint64_t>& blue,
                 std::vector<std::uint64_t>& red) const {
        blue.assign(words_, 0);
        red.assign(words_, 0);
        for (std::size_t k = 0; k < nu_; ++k) {
            const NodeId v = g_.undamped_nodes()[k];
            if (digits[k] == 1) blue[v / 64] |= std::uint64_t{1} << (v % 64);
            if (digits[k] == 2) red[v / 64] |= std::uint64_t{1} << (v % 64);
        }
        bool rich = false;
        for (NodeId i = 0; i < g_.node_count(); ++i) {
            const bool colored = ((blue[i / 64] | red[i / 64]) >> (i % 64)) & 1;
            if (colored) continue;
            bool has_blue = false;
            bool has_red = false;
            const std::uint64_t* row = &masks_[i * words_];
            for (std::size_t w = 0; w < words_; ++w) {
                has_blue = has_blue || (row[w] & blue[w]);
                has_red = has_red || (row[w] & red[w]);
            }
            if (has_blue != has_red) return 0;
            rich = rich || has_blue;
        }
        return rich ? 2 : 1;
    }

    Coloring to_coloring(const std::vector<std::uint8_t>& digits) const {
        Coloring c(g_.node_count(), Color::Black);
        for (std::size_t k = 0; k < nu_; ++k) c[g_.undamped_nodes()[k]] = static_cast<Color>(digits[k]);
        return c;
    }

private:
    const DampingGraph& g_;
    std::size_t nu_;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> masks_;
    std::vector<std::uint64_t> pow3_;
};

void guard(const DampingGraph& g, const SearchOptions& options) {
    if (g.undamped_count() > options.max_undamped) {
        throw Error(ErrorCode::SizeGuard, std::to_string(g.undamped_count()) + " undamped nodes exceed the limit of " +
                                              std::to_string(options.max_undamped));
    }
    if (g.undamped_count() > 40) throw Error(ErrorCode::SizeGuard, "enumeration index would overflow");
}

// Increments a base-3 odometer, least significant digit last.
bool next(std::vector<std::uint8_t>& digits) {
    for (std::size_t k = digits.size(); k-- > 0;) {
        if (++digits[k] < 3) return true;
        digits[k] = 0;
    }
    return false;
}

}  // namespace

std::optional<Coloring> brute_force_rbc(const DampingGraph& g, const SearchOptions& options) {
    guard(g, options);
    const Enumerator e(g);
    const auto hit = detail::first_index(e.total(), options.jobs, [&](std::uint64_t idx) {
        thread_local std::vector<std::uint8_t> digits;
        thread_local std::vector<std::uint64_t> blue;
        thread_local std::vector<std::uint64_t> red;
        e.decode(idx, digits);
        return e.evaluate(digits, blue, red) == 2;
    });
    if (!hit) return std::nullopt;
    std::vector<std::uint8_t> digits;
    e.decode(*hit, digits);
    return e.to_coloring(digits);
}

std::vector<NodeId> uncolorable_set(const DampingGraph& g, const SearchOptions& options) {
    guard(g, options);
    const Enumerator e(g);
    std::vector<bool> colorable(g.node_count(), false);
    std::vector<std::uint8_t> digits(e.undamped(), 0);
    std::vector<std::uint64_t> blue;
    std::vector<std::uint64_t> red;
    do {
        if (e.evaluate(digits, blue, red) == 0) continue;
        for (std::size_t k = 0; k < digits.size(); ++k) {
            if (digits[k] != 0) colorable[g.undamped_nodes()[k]] = true;
        }
    } while (next(digits));

    std::vector<NodeId> out;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        if (!colorable[i]) out.push_back(i);
    }
    return out;
}

bool sign_vector_check(const DampingGraph& g, std::span<const int> s) {
    if (s.size() != g.node_count()) return false;
    if (std::all_of(s.begin(), s.end(), [](int x) { return x == 0; })) return false;
    for (NodeId d : g.damped_nodes()) {
        if (s[d] != 0) return false;
    }
    for (NodeId i = 0; i < g.node_count(); ++i) {
        if (s[i] != 0) continue;
        bool neg = false;
        bool pos = false;
        for (NodeId j : g.neighbors(i)) {
            neg = neg || s[j] < 0;
            pos = pos || s[j] > 0;
        }
        if (neg != pos) return false;
    }
    return true;
}

SignVector coloring_to_sign_vector(const Coloring& c) {
    SignVector s(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == Color::Red) s[i] = 1;
        if (c[i] == Color::Blue) s[i] = -1;
        if (c[i] == Color::White) throw Error(ErrorCode::IncompleteColoring, "node " + std::to_string(i) + " is white");
    }
    return s;
}

std::vector<long long> coloring_to_vector(const DampingGraph& g, const Coloring& c) {
    if (!is_richly_balanced(g, c)) throw Error(ErrorCode::NotRichlyBalanced, "coloring is not richly balanced");

    constexpr long long unseen = -1;
    std::vector<long long> dist(g.node_count(), unseen);
    std::deque<NodeId> queue;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        if (c[i] == Color::Black) {
            dist[i] = 0;
            queue.push_back(i);
        }
    }
    while (!queue.empty()) {
        const NodeId i = queue.front();
        queue.pop_front();
        for (NodeId j : g.neighbors(i)) {
            if (dist[j] == unseen) {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }

    std::vector<long long> v(g.node_count(), 0);
    for (NodeId i = 0; i < g.node_count(); ++i) {
        if (c[i] == Color::Red) v[i] = dist[i];
        if (c[i] == Color::Blue) v[i] = -dist[i];
    }
    if (!kernel_membership(g, v)) throw std::logic_error("distance vector violates the kernel conditions");
    return v;
}

Coloring swap_red_blue(Coloring c) {
    for (auto& x : c) {
        if (x == Color::Red) {
            x = Color::Blue;
        } else if (x == Color::Blue) {
            x = Color::Red;
        }
    }
    return c;
}

}  // namespace pigas
