#include "offhook/lie.hpp"

namespace offhook {

SmoothField lie_bracket(const SmoothField& f, const SmoothField& g) {
    const int level = std::min(f.max_level(), g.max_level()) - 1;
    if (level < 0)
        throw std::invalid_argument("bracket operands '" + f.label() + "', '" + g.label()
                                    + "' are already at the nesting cap");
    SmoothField out;
    auto impl = std::make_shared<SmoothField::Impl>();
    impl->label = "[" + f.label() + "," + g.label() + "]";
    impl->max_level = level;
    SmoothField::fill_bracket(impl->slots, level, f, g,
                              std::make_index_sequence<kMaxNestLevel>{});
    out.impl_ = std::move(impl);
    return out;
}

Mat5 jacobian(const SmoothField& f, const Vec5<double>& x) {
    Mat5 J;
    for (int j = 0; j < 5; ++j) {
        Vec5<Dual<double>> xd;
        for (int i = 0; i < 5; ++i) xd[i] = Dual<double>{x[i], i == j ? 1.0 : 0.0};
        const Vec5<Dual<double>> col = f.eval(xd);
        for (int i = 0; i < 5; ++i) {
            if (!std::isfinite(col[i].v) || !std::isfinite(col[i].d))
                throw std::domain_error("field '" + f.label()
                                        + "' is singular (non-finite) at the requested point");
            J(i, j) = col[i].d;
        }
    }
    return J;
}

Mat5 jacobian_fd(const SmoothField& f, const Vec5<double>& x, double step) {
    Mat5 J;
    for (int j = 0; j < 5; ++j) {
        Vec5<double> xp = x, xm = x;
        xp[j] += step;
        xm[j] -= step;
        const Vec5<double> fp = f.eval(xp);
        const Vec5<double> fm = f.eval(xm);
        for (int i = 0; i < 5; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * step);
    }
    return J;
}

SmoothField iterated_bracket(std::span<const int> word, const SmoothField& f1,
                             const SmoothField& f2) {
    if (word.empty() || word.size() > static_cast<std::size_t>(kMaxBracketWord))
        throw std::invalid_argument("bracket word length must be in [1, "
                                    + std::to_string(kMaxBracketWord) + "]");
    for (int c : word)
        if (c != 1 && c != 2) throw std::invalid_argument("bracket word entries must be 1 or 2");

    auto pick = [&](int c) -> const SmoothField& { return c == 1 ? f1 : f2; };
    SmoothField acc = pick(word.back());
    for (auto it = word.rbegin() + 1; it != word.rend(); ++it)
        acc = lie_bracket(pick(*it), acc);
    return acc;
}

}  // namespace offhook
