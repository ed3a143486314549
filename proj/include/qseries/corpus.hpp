#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qseries/expr.hpp"

namespace qs {

enum class IdentityKind { chain, interchange, summation };

std::string to_string(IdentityKind k);

struct Member {
    std::string label;
    Expr expr;
    bool float_only = false;  // needs infinite products or a nonterminating series
};

/// Explicit domain restriction written in a corpus file.
struct Guard {
    enum class Kind { NotOmega, NotEqual, NonZero, QInsideDisk } kind;
    std::vector<Monomial> args;
    Affine length;  // NotOmega only
    std::string text;
};

struct Identity {
    std::string id;
    IdentityKind kind = IdentityKind::chain;
    std::string ref;
    std::string quote;
    std::string family;  // nonempty for representation lists
    std::vector<std::string> params;  // sampled parameters, sorted
    std::vector<std::pair<std::string, Monomial>> lets;  // solved parameters
    bool uses_z = false;
    std::vector<Member> members;
    std::optional<Expr> closed_form;
    std::vector<Guard> guards;
    std::size_t displayed_members = 0;  // member lines before role expansion
    std::string source;                 // file:line of the header
};

/// Parse a corpus file's contents.  Throws CorpusLoadError with file/line.
std::vector<Identity> parse_corpus(const std::string& text, const std::string& filename);

/// Load every *.qid file of a directory, sorted by file name.
std::vector<Identity> load_corpus_dir(const std::string& dir);

/// Corpus directory: $QSERIES_CORPUS if set, else the installed default.
std::string default_corpus_dir();

/// Loaded once on first use; immutable afterwards.
const std::vector<Identity>& registry();
const Identity& find_identity(const std::string& id);

struct SamplePlan {
    std::uint64_t seed = 0;
    int trials = 50;
    std::vector<long> n_values{0, 1, 2, 3, 4, 5, 6};
    long height_bound = 16;
    int max_rejections = 10000;
    double time_budget_s = 0.0;  // per identity; 0 disables. Trials started past it are aborted.
};

/// A sampled point together with the rejection count it took.
struct SampledPoint {
    Assignment point;  // n = 0 with solved parameters at n = 0; verification sweeps plan.n_values
    int rejections = 0;
};

SampledPoint sample_point(const Identity& ident, const SamplePlan& plan, int trial);

enum class Mode { exact, floating };

std::string to_string(Mode m);

struct Counterexample {
    int trial = 0;
    Assignment point;
    std::string member_i;
    std::string member_j;
    std::string lhs;
    std::string rhs;
    double residual = 0.0;
};

struct TrialOutcome {
    bool passed = false;
    bool aborted = false;
    int rejections = 0;
    double max_residual = 0.0;
    long float_only_checks = 0;
    std::string error;
    std::vector<Counterexample> counterexamples;
};

struct VerificationReport {
    std::string identity_id;
    Mode mode = Mode::exact;
    int trials_run = 0;
    int trials_passed = 0;
    int trials_aborted = 0;
    long rejections = 0;
    long float_only_checks = 0;
    double max_residual = 0.0;
    bool sampling_exhausted = false;
    std::vector<Counterexample> counterexamples;
    double wall_time_s = 0.0;
    std::vector<std::string> errors;

    bool passed() const { return trials_passed == trials_run && !sampling_exhausted && trials_aborted == 0; }
};

/// Relative tolerance of float-mode verification.
inline constexpr double kFloatRelTol = 1e-10;

/// One trial; the unit of work shared by both verify kernels.
TrialOutcome run_trial(const Identity& ident, const SamplePlan& plan, Mode mode, int trial);

/// Reference implementation: trials in order on the calling thread.
VerificationReport verify_serial(const Identity& ident, const SamplePlan& plan, Mode mode);

/// OpenMP kernel over trials; reports are identical to verify_serial
/// apart from wall time.
VerificationReport verify(const Identity& ident, const SamplePlan& plan, Mode mode);

/// Return a copy of `ident` with one token of one member changed.
/// The choice is deterministic in `seed`; `description` says what changed.
Identity mutate(const Identity& ident, std::uint64_t seed, std::string* description = nullptr);

enum class VariantGroup { threeparam_q, threeparam_qinv, twoparam_q, twoparam_qinv };

struct VariantCount {
    long count = 0;
    std::vector<std::string> breakdown;
    bool convention_inferred = true;
};

VariantCount enumerate_variants(VariantGroup g);

}  // namespace qs
