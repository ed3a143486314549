#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qseries/corpus.hpp"

namespace qs {

enum class FamilyId {
    CDqHahn,
    CDqInvHahn,
    ASC,
    ASCqInv,
    CBqHermite,
    CBqInvHermite,
    CqHermite,
    CqInvHermite,
    Xn,
    YnMinus,
    YnPlus,
    ZnMinus,
    Zn,
    ZnPlus,
};

const std::vector<FamilyId>& all_families();
std::string family_name(FamilyId f);
FamilyId parse_family(const std::string& name);
int arity(FamilyId f);
/// a1, a2, a3 for three-parameter families, a for one-parameter ones.
std::vector<std::string> param_names(FamilyId f);
/// Corpus identity holding the representation list.
std::string family_identity(FamilyId f);
bool is_limit_function(FamilyId f);

struct FamilyPoint {
    std::vector<Exact> params;
    Exact z{2L};
    Exact q = Exact::ratio(1, 2);
    long n = 0;
};

Assignment to_assignment(FamilyId f, const FamilyPoint& pt);

/// Every representation, role variants expanded, in display order.
const std::vector<Member>& representations(FamilyId f);
/// Number of displayed forms before role expansion.
std::size_t displayed_representations(FamilyId f);

/// Value of the family at `pt`.  `rep` indexes representations(f); without
/// it the first representation admitting the point is used.
template <class S>
S eval_family(FamilyId f, const FamilyPoint& pt, std::optional<std::size_t> rep = std::nullopt);

/// Closed form of a limit function; UnknownName for the polynomial families.
Exact closed_form(FamilyId f, const FamilyPoint& pt);

enum class Direction { to0, toInf };

std::string to_string(Direction d);

/// lim rescale * source = factor * target(target_params) as `param` runs
/// to its limit.  Monomials are in the source's parameter names.
struct LimitEdge {
    FamilyId source;
    std::string param;
    Direction direction;
    FamilyId target;
    Monomial rescale;
    std::map<std::string, Monomial> target_params;
    Monomial factor;
    std::string figure_label;  // the scheme label on the W-series level
};

const std::vector<LimitEdge>& limit_edges();
const LimitEdge& limit_edge(FamilyId f, const std::string& param, Direction d);

/// Relative errors |rescale*source - factor*target| / max(1, |factor*target|)
/// along the ladder.  The source is evaluated exactly at each ladder value.
std::vector<double> limit_edge_errors(const LimitEdge& e, const FamilyPoint& pt, const std::vector<Exact>& ladder);

}  // namespace qs
