#pragma once

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "offhook/dual.hpp"
#include "offhook/linalg.hpp"

namespace offhook {

// Deepest dual nesting a field can be evaluated at. A bracket word of
// length L evaluated on K-nested scalars reaches the base fields at
// nesting K + L - 1, so base fields are instantiated up to this level.
inline constexpr int kMaxNestLevel = 5;

// Longest bracket word accepted by iterated_bracket.
inline constexpr int kMaxBracketWord = 5;

/// A smooth vector field (or coordinate map) on R^5, evaluable on plain
/// doubles and on nested duals up to kMaxNestLevel. Brackets compose
/// lazily: the result of lie_bracket is itself a SmoothField whose
/// evaluation differentiates its operands one nesting level deeper.
class SmoothField {
    template <int K>
    using Eval = std::function<Vec5<NestedDual<K>>(const Vec5<NestedDual<K>>&)>;

    template <class Seq>
    struct SlotsOf;
    template <std::size_t... Ks>
    struct SlotsOf<std::index_sequence<Ks...>> {
        using type = std::tuple<Eval<static_cast<int>(Ks)>...>;
    };
    using Slots = typename SlotsOf<std::make_index_sequence<kMaxNestLevel + 1>>::type;

    struct Impl {
        std::string label;
        int max_level = kMaxNestLevel;
        Slots slots;
    };

public:
    /// Wrap a generic callable Vec5<T> -> Vec5<T>; it is instantiated for
    /// every supported nesting level.
    template <class Fn>
    SmoothField(std::string label, Fn fn) {
        auto impl = std::make_shared<Impl>();
        impl->label = std::move(label);
        impl->max_level = kMaxNestLevel;
        fill_all(impl->slots, fn, std::make_index_sequence<kMaxNestLevel + 1>{});
        impl_ = std::move(impl);
    }

    template <class T>
    Vec5<T> eval(const Vec5<T>& x) const {
        constexpr int k = nest_level_v<T>;
        static_assert(k <= kMaxNestLevel, "dual nesting too deep for SmoothField");
        const auto& fn = std::get<static_cast<std::size_t>(k)>(impl_->slots);
        if (!fn)
            throw std::runtime_error("field '" + impl_->label
                                     + "' cannot be evaluated at dual nesting level "
                                     + std::to_string(k) + " (bracket too deep)");
        return fn(x);
    }

    Vec5<double> operator()(const Vec5<double>& x) const { return eval(x); }

    const std::string& label() const { return impl_->label; }
    int max_level() const { return impl_->max_level; }

    friend SmoothField lie_bracket(const SmoothField& f, const SmoothField& g);

private:
    SmoothField() = default;

    template <class Fn, std::size_t... Ks>
    static void fill_all(Slots& slots, const Fn& fn, std::index_sequence<Ks...>) {
        ((std::get<Ks>(slots) = fn), ...);
    }

    // Bracket slot at level K differentiates the operands at level K+1.
    template <int K>
    static Eval<K> make_bracket_slot(const SmoothField& f, const SmoothField& g) {
        return [f, g](const Vec5<NestedDual<K>>& x) {
            using T = NestedDual<K>;
            const Vec5<T> fx = f.eval(x);
            const Vec5<T> gx = g.eval(x);
            Vec5<T> out{};
            for (int j = 0; j < 5; ++j) {
                Vec5<Dual<T>> xd;
                for (int i = 0; i < 5; ++i) xd[i] = Dual<T>{x[i], T(i == j ? 1.0 : 0.0)};
                const Vec5<Dual<T>> gj = g.eval(xd);  // derivative parts = column j of Dg
                const Vec5<Dual<T>> fj = f.eval(xd);
                for (int i = 0; i < 5; ++i)
                    out[i] = out[i] + gj[i].d * fx[j] - fj[i].d * gx[j];
            }
            return out;
        };
    }

    template <std::size_t... Ks>
    static void fill_bracket(Slots& slots, int max_level, const SmoothField& f,
                             const SmoothField& g, std::index_sequence<Ks...>) {
        ((static_cast<int>(Ks) <= max_level
              ? void(std::get<Ks>(slots) = make_bracket_slot<static_cast<int>(Ks)>(f, g))
              : void()),
         ...);
    }

    std::shared_ptr<const Impl> impl_;
};

/// [f,g](x) = (Dg)f - (Df)g, composable up to the nesting cap.
SmoothField lie_bracket(const SmoothField& f, const SmoothField& g);

/// Exact Jacobian via one seeded dual evaluation per basis direction.
/// Throws std::domain_error if the evaluation is non-finite at x.
Mat5 jacobian(const SmoothField& f, const Vec5<double>& x);

/// Central finite-difference Jacobian; cross-check only.
Mat5 jacobian_fd(const SmoothField& f, const Vec5<double>& x, double step = 1e-5);

/// Right-nested bracket for a word over {1,2}: word (1,1,1,2) gives
/// [f1,[f1,[f1,f2]]]. Words longer than kMaxBracketWord are rejected.
SmoothField iterated_bracket(std::span<const int> word, const SmoothField& f1,
                             const SmoothField& f2);

}  // namespace offhook
