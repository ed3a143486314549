#include <algorithm>
#include <set>

#include "qseries/corpus.hpp"

namespace qs {

namespace {

struct GroupSpec {
    const char* identity;
    std::vector<std::string> symmetric;
    int main_p;
};

GroupSpec group_spec(VariantGroup g) {
    switch (g) {
    case VariantGroup::threeparam_q: return {"cor4.3", {"c", "d", "e"}, -1};
    case VariantGroup::threeparam_qinv: return {"cor4.13", {"c", "d", "e"}, 1};
    case VariantGroup::twoparam_q: return {"cor5.8", {"c", "d"}, -2};
    case VariantGroup::twoparam_qinv: return {"cor5.14b", {"c", "d"}, 2};
    }
    return {"", {}, 0};
}

long factorial(std::size_t k) {
    long f = 1;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<long>(i);
    return f;
}

bool is_w(const Member& m, int p) { return m.expr.series && m.expr.series->kind == SeriesKind::W && m.expr.series->p == p; }

}  // namespace

VariantCount enumerate_variants(VariantGroup g) {
    const GroupSpec spec = group_spec(g);
    const Identity& ident = find_identity(spec.identity);
    const long perms = factorial(spec.symmetric.size());
    VariantCount out;
    // Block 1: every displayed W form with the chain's own p, under all
    // permutations of the symmetric parameters.
    long forms = 0;
    for (const Member& m : ident.members) {
        if (is_w(m, spec.main_p)) ++forms;
    }
    out.count += forms * perms;
    out.breakdown.push_back(std::to_string(forms) + " W^" + std::to_string(spec.main_p) + " forms x " + std::to_string(perms) +
                            " permutations");
    // Block 2: the opposite-p member, counted as its distinct permutation
    // images times the permutations acting on each image.
    for (const Member& m : ident.members) {
        if (!is_w(m, -spec.main_p)) continue;
        std::set<std::string> images;
        std::vector<std::string> order = spec.symmetric;
        std::sort(order.begin(), order.end());
        do {
            std::map<std::string, Monomial> map;
            for (std::size_t i = 0; i < order.size(); ++i) map[spec.symmetric[i]] = Monomial::name(order[i]);
            images.insert(canonical_key(substitute(m.expr, map)));
        } while (std::next_permutation(order.begin(), order.end()));
        out.count += static_cast<long>(images.size()) * perms;
        out.breakdown.push_back(m.label + ": " + std::to_string(images.size()) + " images x " + std::to_string(perms) +
                                " permutations");
    }
    return out;
}

}  // namespace qs
