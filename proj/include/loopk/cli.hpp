#ifndef LOOPK_CLI_HPP
#define LOOPK_CLI_HPP

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace loopk
{

struct SessionConfig
{
    // t-adic precision N, at least 2.
    int precision = 8;
    // 0 selects the conductor of the algebra; otherwise that conductor must
    // divide it.
    unsigned conductor = 0;
    unsigned long long seed = 1;
    unsigned budget_gamma = 96;
    unsigned budget_coeff = 24;
    // "text" or "json"
    std::string format = "text";

    void validate() const;
    // "precision=8 seed=1 ..." in a fixed key order.
    std::string str() const;
};

// Output of one command: echoes of the command and configuration, the
// serialized inputs, the result, and a certificate that a replay can
// re-check from the bundle alone. Timing is reported separately so bundles
// stay byte-identical across runs.
struct ReportBundle
{
    std::string command;
    SessionConfig config;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::string result;
    std::string certificate;
    // "pass" or "fail"
    std::string verdict = "pass";

    // Lines "@begin <section> [<name>]" ... "@end"; content lines never start
    // with '@'.
    std::string text() const;
    std::string json() const;
    std::string render() const;
    // Accepts either rendering.
    static ReportBundle parse(std::string_view s);

    const std::string &input(const std::string &name) const;
};

ReportBundle cmd_algebra_build(const std::string &type, unsigned rank, const SessionConfig &cfg);
ReportBundle cmd_multiloop(const std::string &spec_text, const SessionConfig &cfg);
// algebra_text is a multiloop specification or a serialized graded algebra;
// an empty delta proposes one from the relative roots.
ReportBundle cmd_lietorus_check(const std::string &algebra_text, const std::string &delta, const SessionConfig &cfg);
// coeff_vars < 0 uses the algebra's own variables; 0 selects rational
// coefficients.
ReportBundle cmd_factor(const std::string &spec_text, const std::string &word_text, int coeff_vars,
                        const SessionConfig &cfg);
// Word with `letters` random letters whose parameter precision suffices for
// factoring at cfg.precision.
std::string random_word(const std::string &spec_text, unsigned letters, int coeff_vars, const SessionConfig &cfg);
// sub: enumerate | exactness | diagonal
ReportBundle cmd_cocycle(const std::string &sub, const std::string &config_text, const SessionConfig &cfg);

struct VerifyOutcome
{
    bool ok = false;
    std::string detail;
};
// Recomputes the certificate of a bundle.
VerifyOutcome verify_bundle(const ReportBundle &bundle);

// Full command line (without the program name). Exit codes: 0 success or
// pass, 1 usage error, 2 mathematical verdict fail, 3 precision or budget
// exhausted.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace loopk

#endif
