#include <loopk/cli.hpp>

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <loopk/cocycle.hpp>
#include <loopk/elemgroup.hpp>
#include <loopk/errors.hpp>
#include <loopk/lietorus.hpp>

namespace loopk
{

std::string join_values(const Cocycle &z);

namespace
{

// Exact zeros in parsed words; far above any working precision.
constexpr int exact_precision = 1 << 28;

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw invalid_input("cannot read file '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool starts_with_token(const std::string &text, const std::string &token)
{
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        const auto p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos || line[p] == '#') {
            continue;
        }
        return line.compare(p, token.size(), token) == 0;
    }
    return false;
}

void check_conductor(unsigned needed, const SessionConfig &cfg)
{
    if (cfg.conductor != 0 && cfg.conductor % needed != 0) {
        throw invalid_input("the algebra needs Q(zeta_" + std::to_string(needed) + "), which is not contained in Q(zeta_"
                            + std::to_string(cfg.conductor) + ")");
    }
}

ReportBundle make_bundle(const std::string &command, const SessionConfig &cfg)
{
    ReportBundle b;
    b.command = command;
    b.config = cfg;
    return b;
}

std::string dimension_table(const GradedLieAlgebra &g)
{
    std::ostringstream os;
    unsigned total = 0;
    os << "dimensions\n";
    for (const auto &[r, d] : g.residue_dimensions()) {
        os << "dim " << root_str(r) << ' ' << d << "\n";
        total += d;
    }
    os << "total " << total << "\n";
    return os.str();
}

GradedLieAlgebra algebra_from_text(const std::string &text, const SessionConfig &cfg)
{
    GradedLieAlgebra g = starts_with_token(text, "graded-lie-algebra") ? GradedLieAlgebra::parse(text)
                                                                         : build_from_file(parse_multiloop(text));
    check_conductor(g.conductor(), cfg);
    return g;
}

int resolve_coeff_vars(const GradedLieAlgebra &g, int coeff_vars)
{
    const int k = coeff_vars < 0 ? static_cast<int>(g.nvars()) : coeff_vars;
    if (k < static_cast<int>(g.nvars())) {
        throw invalid_input("coefficient ring needs at least " + std::to_string(g.nvars()) + " variables");
    }
    if (k == 0 && g.conductor() > 2) {
        throw invalid_input("rational coefficients need rational structure constants");
    }
    return k;
}

std::string coefficient_ring_name(int k)
{
    if (k == 0) {
        return "Q";
    }
    std::string s = "Q[";
    for (int i = 1; i <= k; ++i) {
        s += (i > 1 ? "," : "") + std::string("x") + std::to_string(i) + "^{+-1}";
    }
    return s + "]";
}

template <typename B>
RootElementWord<TruncSeries<B>> parse_series_word(const std::string &text, const GradedLieAlgebra &g, const B &base)
{
    const TruncSeries<B> proto(exact_precision, base);
    return parse_word(text, g, proto, [&](const std::string &s) { return TruncSeries<B>::parse(s, base); });
}

struct FactorCertificate
{
    int precision = 0, cut = 0, depth = 0;
    std::string g1, g2;
};

FactorCertificate parse_factor_certificate(const std::string &text)
{
    FactorCertificate c;
    std::istringstream in(text);
    std::string head;
    std::getline(in, head);
    if (std::sscanf(head.c_str(), "factorization precision=%d cut=%d depth=%d", &c.precision, &c.cut, &c.depth) != 3) {
        throw parse_error("malformed factorization header", 1, 1);
    }
    const auto p1 = text.find("\ng1\n");
    const auto p2 = text.find("\ng2\n");
    if (p1 == std::string::npos || p2 == std::string::npos || p2 < p1) {
        throw parse_error("factorization certificate lacks g1/g2 sections", 1, 1);
    }
    c.g1 = text.substr(p1 + 4, p2 + 1 - (p1 + 4));
    c.g2 = text.substr(p2 + 4);
    return c;
}

template <typename B>
ReportBundle factor_with(const RelativeGrading &rg, const std::string &word_text, const B &base, ReportBundle b)
{
    const auto word = parse_series_word(word_text, rg.algebra, base);
    const auto f = factor_loop_series(rg, word, b.config.precision);
    std::string why;
    const bool ok = verify_factorization(rg, word, f, base, &why);
    std::ostringstream res;
    res << "letters in " << word.letters.size() << " g1 " << f.g1.letters.size() << " g2 " << f.g2.letters.size()
        << "\n";
    res << "congruence mod t^" << f.precision << ' ' << (ok ? "holds" : "fails") << "\n";
    if (!ok) {
        res << "reason " << why << "\n";
    }
    b.result = res.str();
    b.certificate = f.str();
    b.verdict = ok ? "pass" : "fail";
    return b;
}

template <typename B>
VerifyOutcome verify_factor_with(const RelativeGrading &rg, const ReportBundle &b, const B &base)
{
    const auto word = parse_series_word(b.input("word"), rg.algebra, base);
    const auto cert = parse_factor_certificate(b.certificate);
    LoopFactorization<B> f;
    f.g1 = parse_series_word(cert.g1, rg.algebra, base);
    f.g2 = parse_series_word(cert.g2, rg.algebra, base);
    f.precision = cert.precision;
    f.cut = cert.cut;
    f.depth = cert.depth;
    if (f.precision != b.config.precision) {
        return {false, "certificate precision differs from the configuration"};
    }
    if (f.g1.ring != ScalarRing::power_series || f.g2.ring != ScalarRing::laurent_polynomial) {
        return {false, "factor rings are not A[[t]] and A[t,t^-1]"};
    }
    std::string why;
    if (!verify_factorization(rg, word, f, base, &why)) {
        return {false, why};
    }
    return {true, "g1 g2 == word mod t^" + std::to_string(f.precision)};
}

template <typename B, typename Gen>
std::string random_word_with(const RelativeGrading &rg, unsigned letters, const B &base, Gen &&coeff,
                             std::mt19937_64 &rng, int N)
{
    if (rg.phi.empty()) {
        throw math_error("random word: the grading has no relative roots");
    }
    std::uniform_int_distribution<std::size_t> pick(0, rg.phi.size() - 1);
    std::uniform_int_distribution<int> start(-2, 0);
    std::vector<std::pair<Root, int>> shape;
    int depth = 0;
    for (unsigned i = 0; i < letters; ++i) {
        const Root a = rg.phi[pick(rng)];
        const int lo = start(rng);
        shape.emplace_back(a, lo);
        depth += static_cast<int>(nilpotency_bound(rg, a)) * -lo;
        if (rg.contains(scaled(a, 2))) {
            depth += static_cast<int>(nilpotency_bound(rg, scaled(a, 2))) * -lo;
        }
    }
    const int precision = N + 4 * depth;
    RootElementWord<TruncSeries<B>> w{ScalarRing::laurent_series, {}};
    for (const auto &[a, lo] : shape) {
        w.letters.push_back({a, random_series_parameter(rg, a, lo, lo + 3, precision, coeff, base)});
    }
    return w.str();
}

std::string escape_line(const std::string &line)
{
    return !line.empty() && line[0] == '@' ? "@" + line : line;
}

std::string section(const std::string &name, const std::string &content)
{
    std::ostringstream os;
    os << "@begin " << name << "\n";
    std::istringstream in(content);
    for (std::string line; std::getline(in, line);) {
        os << escape_line(line) << "\n";
    }
    os << "@end\n";
    return os.str();
}

SessionConfig parse_config_line(const std::string &line)
{
    SessionConfig c;
    std::istringstream in(line);
    for (std::string item; in >> item;) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw parse_error("malformed config item '" + item + "'");
        }
        const std::string k = item.substr(0, eq), v = item.substr(eq + 1);
        try {
            if (k == "precision") {
                c.precision = std::stoi(v);
            } else if (k == "conductor") {
                c.conductor = static_cast<unsigned>(std::stoul(v));
            } else if (k == "seed") {
                c.seed = std::stoull(v);
            } else if (k == "budget-gamma") {
                c.budget_gamma = static_cast<unsigned>(std::stoul(v));
            } else if (k == "budget-coeff") {
                c.budget_coeff = static_cast<unsigned>(std::stoul(v));
            } else if (k == "format") {
                c.format = v;
            } else {
                throw parse_error("unknown config key '" + k + "'");
            }
        } catch (const std::logic_error &) {
            throw parse_error("bad value for config key '" + k + "'");
        }
    }
    return c;
}

CocycleBudget budget_of(const SessionConfig &cfg)
{
    return CocycleBudget{cfg.budget_gamma, cfg.budget_coeff};
}

std::string cocycle_result(const std::string &sub, const CocycleConfig &config, const SessionConfig &cfg,
                           bool &pass)
{
    const CocycleBudget budget = budget_of(cfg);
    const CoverGroup &loop = config.loop;
    std::ostringstream os;
    os << "configuration " << config.label << "\n";
    os << "loop-order " << loop.order() << " coefficient-order " << config.coeff.order() << "\n";
    pass = true;
    if (sub == "enumerate") {
        const auto coeff = config.coefficients(loop);
        const auto h = h1_enumerate(loop, coeff, budget);
        for (const auto &c : h.classes) {
            pass = pass && is_cocycle(loop, coeff, c);
        }
        os << h.str();
        return os.str();
    }
    const CoverGroup product = product_cover(loop);
    if (product.order() > budget.max_group) {
        throw budget_exceeded("cocycle: |Gamma| = " + std::to_string(product.order()) + " exceeds budget "
                              + std::to_string(budget.max_group));
    }
    os << "product-order " << product.order() << "\n";
    const auto lcoeff = config.coefficients(loop);
    const auto pcoeff = config.coefficients(product);
    const auto etas = all_cocycles(loop, lcoeff, budget);
    if (sub == "exactness") {
        const auto base = inf_res_sequence(product, pcoeff, budget);
        pass = base.pass;
        os << "untwisted " << base.str();
        std::size_t twists = 0, ok = 0;
        for (const auto &eta : etas) {
            const auto [e1, e2] = loop_pullbacks(loop, product, eta);
            // M acts trivially on the twist by the second pullback
            const auto tw = twisted(product, pcoeff, e2);
            const auto rep = inf_res_sequence(product, tw, budget);
            ++twists;
            ok += rep.pass;
            if (!rep.pass) {
                os << "twist " << eta.str() << ' ' << rep.str();
            }
        }
        pass = pass && ok == twists;
        os << "twists " << twists << " exact " << ok << "\n";
        return os.str();
    }
    if (sub == "diagonal") {
        unsigned max_d = 0;
        std::size_t ok = 0;
        for (const auto &eta : etas) {
            const auto [e1, e2] = loop_pullbacks(loop, product, eta);
            const auto r = diagonal_argument(product, pcoeff, e1, e2);
            const bool good = r.success && r.d <= loop.m() && r.theta_trivial;
            ok += good;
            max_d = std::max(max_d, r.d);
            os << "eta " << join_values(eta) << " d " << r.d << " base eta" << r.base << " theta "
               << (r.theta_trivial ? "trivial" : "nontrivial") << " witness " << r.witness
               << (good ? "" : " FAILED " + r.detail) << "\n";
        }
        pass = ok == etas.size();
        os << "cocycles " << etas.size() << " succeeded " << ok << " max-d " << max_d << " m " << loop.m() << "\n";
        return os.str();
    }
    throw invalid_input("unknown cocycle subcommand '" + sub + "'");
}

} // namespace

void SessionConfig::validate() const
{
    if (precision < 2) {
        throw invalid_input("precision must be at least 2");
    }
    if (format != "text" && format != "json") {
        throw invalid_input("format must be text or json");
    }
}

std::string SessionConfig::str() const
{
    std::ostringstream os;
    os << "precision=" << precision << " conductor=" << conductor << " seed=" << seed << " budget-gamma=" << budget_gamma
       << " budget-coeff=" << budget_coeff << " format=" << format;
    return os.str();
}

std::string ReportBundle::text() const
{
    std::ostringstream os;
    os << "loopk-report\n";
    os << section("command", command);
    os << section("config", config.str());
    for (const auto &[name, body] : inputs) {
        os << section("input " + name, body);
    }
    os << section("result", result);
    os << section("certificate", certificate);
    os << section("verdict", verdict);
    return os.str();
}

std::string ReportBundle::json() const
{
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config"] = config.str();
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto &[name, body] : inputs) {
        in[name] = body;
    }
    j["inputs"] = in;
    j["result"] = result;
    j["certificate"] = certificate;
    j["verdict"] = verdict;
    return j.dump(2) + "\n";
}

std::string ReportBundle::render() const
{
    return config.format == "json" ? json() : text();
}

ReportBundle ReportBundle::parse(std::string_view s)
{
    ReportBundle b;
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && s[first] == '{') {
        nlohmann::ordered_json j;
        try {
            j = nlohmann::ordered_json::parse(s);
            b.command = j.at("command").get<std::string>();
            b.config = parse_config_line(j.at("config").get<std::string>());
            for (const auto &[name, body] : j.at("inputs").items()) {
                b.inputs.emplace_back(name, body.get<std::string>());
            }
            b.result = j.at("result").get<std::string>();
            b.certificate = j.at("certificate").get<std::string>();
            b.verdict = j.at("verdict").get<std::string>();
        } catch (const nlohmann::json::exception &e) {
            throw parse_error(std::string("report bundle: ") + e.what());
        }
        return b;
    }
    std::istringstream in{std::string(s)};
    std::string line;
    int lineno = 1;
    if (!std::getline(in, line) || line != "loopk-report") {
        throw parse_error("expected 'loopk-report'", 1, 1);
    }
    std::string current;
    std::ostringstream body;
    bool open = false;
    bool have_command = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!open) {
            if (line.rfind("@begin ", 0) != 0) {
                throw parse_error("expected '@begin'", lineno, 1);
            }
            current = line.substr(7);
            body.str("");
            open = true;
            continue;
        }
        if (line == "@end") {
            std::string content = body.str();
            open = false;
            if (current == "command") {
                b.command = content.empty() ? content : content.substr(0, content.size() - 1);
                have_command = true;
            } else if (current == "config") {
                b.config = parse_config_line(content);
            } else if (current.rfind("input ", 0) == 0) {
                b.inputs.emplace_back(current.substr(6), content);
            } else if (current == "result") {
                b.result = content;
            } else if (current == "certificate") {
                b.certificate = content;
            } else if (current == "verdict") {
                b.verdict = content.empty() ? content : content.substr(0, content.size() - 1);
            } else {
                throw parse_error("unknown section '" + current + "'", lineno, 1);
            }
            continue;
        }
        if (line.rfind("@@", 0) == 0) {
            line = line.substr(1);
        } else if (!line.empty() && line[0] == '@') {
            throw parse_error("unexpected directive inside a section", lineno, 1);
        }
        body << line << "\n";
    }
    if (open || !have_command) {
        throw parse_error("truncated report bundle", lineno, 1);
    }
    return b;
}

const std::string &ReportBundle::input(const std::string &name) const
{
    for (const auto &[n, body] : inputs) {
        if (n == name) {
            return body;
        }
    }
    throw invalid_input("report bundle has no input '" + name + "'");
}

std::string join_values(const Cocycle &z)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < z.values.size(); ++i) {
        os << (i ? " " : "") << z.values[i];
    }
    return os.str();
}

ReportBundle cmd_algebra_build(const std::string &type, unsigned rank, const SessionConfig &cfg)
{
    cfg.validate();
    const auto alg = build_chevalley(build_root_system(type, rank));
    ReportBundle b = make_bundle("algebra build " + type + " " + std::to_string(rank), cfg);
    b.result = alg.str();
    unsigned w[3];
    const bool ok = alg.jacobi_holds(w);
    b.certificate = std::string("jacobi ") + (ok ? "holds" : "fails") + " on all basis triples of dimension "
                    + std::to_string(alg.dim()) + "\n";
    b.verdict = ok ? "pass" : "fail";
    return b;
}

ReportBundle cmd_multiloop(const std::string &spec_text, const SessionConfig &cfg)
{
    cfg.validate();
    const auto file = parse_multiloop(spec_text);
    const auto g = build_from_file(file);
    check_conductor(g.conductor(), cfg);
    ReportBundle b = make_bundle("multiloop", cfg);
    b.inputs.emplace_back("spec", spec_text);
    b.result = g.str() + dimension_table(g);
    std::string witness;
    const bool compatible = g.grading_compatible(&witness);
    std::ostringstream cert;
    cert << "grading-compatible " << (compatible ? "yes" : "no " + witness) << "\n";
    cert << "base-dimension " << file.spec.base.dim() << " total " << g.size() << "\n";
    b.certificate = cert.str();
    b.verdict = compatible && g.size() == file.spec.base.dim() ? "pass" : "fail";
    return b;
}

ReportBundle cmd_lietorus_check(const std::string &algebra_text, const std::string &delta, const SessionConfig &cfg)
{
    cfg.validate();
    const auto g = algebra_from_text(algebra_text, cfg);
    const auto rep = delta.empty() ? discover_and_check(g) : check_lie_torus(g, build_root_system(delta));
    ReportBundle b = make_bundle("lietorus-check" + (delta.empty() ? std::string() : " " + delta), cfg);
    b.inputs.emplace_back("algebra", algebra_text);
    b.result = rep.str();
    std::ostringstream cert;
    bool witnesses_ok = true;
    if (!rep.witnesses.empty()) {
        const auto d = align_delta(g, build_root_system(rep.delta));
        for (const auto &w : rep.witnesses) {
            std::string why;
            const bool ok = verify_witness(g, d, w, &why);
            witnesses_ok = witnesses_ok && ok;
            cert << "witness " << root_str(w.alpha) << ' ' << root_str(w.lambda) << ' '
                 << (ok ? "verified" : "FAILED " + why) << "\n";
        }
    }
    cert << "witnesses " << rep.witnesses.size() << (witnesses_ok ? " all verified" : " with failures") << "\n";
    b.certificate = cert.str();
    b.verdict = rep.pass() && witnesses_ok ? "pass" : "fail";
    return b;
}

ReportBundle cmd_factor(const std::string &spec_text, const std::string &word_text, int coeff_vars,
                        const SessionConfig &cfg)
{
    cfg.validate();
    const auto g = build_from_file(parse_multiloop(spec_text));
    check_conductor(g.conductor(), cfg);
    const auto rg = relative_roots(g);
    const int k = resolve_coeff_vars(g, coeff_vars);
    ReportBundle b = make_bundle("factor", cfg);
    b.inputs.emplace_back("spec", spec_text);
    b.inputs.emplace_back("coefficients", "coeff-vars " + std::to_string(k) + " ring " + coefficient_ring_name(k)
                                              + "\n");
    b.inputs.emplace_back("word", word_text);
    if (k == 0) {
        return factor_with(rg, word_text, Rational(0), std::move(b));
    }
    return factor_with(rg, word_text, LaurentPoly(static_cast<unsigned>(k)), std::move(b));
}

std::string random_word(const std::string &spec_text, unsigned letters, int coeff_vars, const SessionConfig &cfg)
{
    cfg.validate();
    const auto g = build_from_file(parse_multiloop(spec_text));
    const auto rg = relative_roots(g);
    const int k = resolve_coeff_vars(g, coeff_vars);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> c(-2, 2), e(-1, 1);
    if (k == 0) {
        auto coeff = [&] { return Rational(c(rng)); };
        return random_word_with(rg, letters, Rational(0), coeff, rng, cfg.precision);
    }
    auto coeff = [&] {
        Exponent x(static_cast<std::size_t>(k));
        for (auto &v : x) {
            v = e(rng);
        }
        return LaurentPoly::monomial(Cyclotomic(Rational(c(rng)), 1), x);
    };
    return random_word_with(rg, letters, LaurentPoly(static_cast<unsigned>(k)), coeff, rng, cfg.precision);
}

ReportBundle cmd_cocycle(const std::string &sub, const std::string &config_text, const SessionConfig &cfg)
{
    cfg.validate();
    const auto config = parse_cocycle_config(config_text);
    ReportBundle b = make_bundle("cocycle " + sub, cfg);
    b.inputs.emplace_back("config", config_text);
    bool pass = true;
    b.result = cocycle_result(sub, config, cfg, pass);
    b.certificate = config.str();
    b.verdict = pass ? "pass" : "fail";
    return b;
}

VerifyOutcome verify_bundle(const ReportBundle &b)
{
    auto compare = [&](const ReportBundle &fresh) -> VerifyOutcome {
        if (fresh.result != b.result) {
            return {false, "recomputed result differs"};
        }
        if (fresh.certificate != b.certificate) {
            return {false, "recomputed certificate differs"};
        }
        if (fresh.verdict != b.verdict) {
            return {false, "recomputed verdict differs"};
        }
        return {true, "recomputed result, certificate and verdict match"};
    };
    std::istringstream cmd(b.command);
    std::string head;
    cmd >> head;
    if (head == "algebra") {
        std::string build, type;
        unsigned rank = 0;
        cmd >> build >> type >> rank;
        const auto alg = build_chevalley(build_root_system(type, rank));
        if (!alg.jacobi_holds()) {
            return {false, "Jacobi identity fails"};
        }
        return compare(cmd_algebra_build(type, rank, b.config));
    }
    if (head == "multiloop") {
        const auto end = b.result.find("\nend\n");
        if (end == std::string::npos) {
            return {false, "result lacks a serialized algebra"};
        }
        const auto g = GradedLieAlgebra::parse(b.result.substr(0, end + 5));
        std::string witness;
        if (!g.grading_compatible(&witness)) {
            return {false, "serialized algebra is not graded: " + witness};
        }
        return compare(cmd_multiloop(b.input("spec"), b.config));
    }
    if (head == "lietorus-check") {
        std::string delta;
        cmd >> delta;
        return compare(cmd_lietorus_check(b.input("algebra"), delta, b.config));
    }
    if (head == "factor") {
        const auto g = build_from_file(parse_multiloop(b.input("spec")));
        const auto rg = relative_roots(g);
        std::istringstream cv(b.input("coefficients"));
        std::string key;
        int k = -1;
        cv >> key >> k;
        if (key != "coeff-vars" || k < 0) {
            return {false, "malformed coefficient description"};
        }
        const VerifyOutcome v = k == 0 ? verify_factor_with(rg, b, Rational(0))
                                       : verify_factor_with(rg, b, LaurentPoly(static_cast<unsigned>(k)));
        if (!v.ok || b.verdict != "pass") {
            return v.ok ? VerifyOutcome{false, "bundle verdict is not pass"} : v;
        }
        return v;
    }
    if (head == "cocycle") {
        std::string sub;
        cmd >> sub;
        return compare(cmd_cocycle(sub, b.input("config"), b.config));
    }
    return {false, "unknown command '" + b.command + "'"};
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact computations with multiloop Lie algebras, relative root systems, loop-group factorization "
                 "and finite-level cocycles."};
    app.name("loopk");
    app.fallthrough();
    app.require_subcommand(0, 1);

    SessionConfig cfg;
    std::string verify_path;
    app.add_option("--precision", cfg.precision, "t-adic precision N (>= 2)")->envname("LOOPK_PRECISION");
    app.add_option("--seed", cfg.seed, "random seed")->envname("LOOPK_SEED");
    app.add_option("--conductor", cfg.conductor, "cyclotomic conductor (0: from the algebra)")
        ->envname("LOOPK_CONDUCTOR");
    app.add_option("--budget-gamma", cfg.budget_gamma, "largest |Gamma| for cocycle enumeration")
        ->envname("LOOPK_BUDGET_GAMMA");
    app.add_option("--budget-coeff", cfg.budget_coeff, "largest |A| for cocycle enumeration")
        ->envname("LOOPK_BUDGET_COEFF");
    app.add_option("--format", cfg.format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->envname("LOOPK_FORMAT");
    app.add_option("--verify", verify_path, "replay a report bundle and recheck its certificate")
        ->envname("LOOPK_VERIFY");

    auto *algebra = app.add_subcommand("algebra", "Chevalley algebras");
    auto *build = algebra->add_subcommand("build", "build and serialize a split simple Lie algebra");
    algebra->require_subcommand(1);
    std::string type;
    unsigned rank = 0;
    build->add_option("type", type, "Cartan type letter")->required();
    build->add_option("rank", rank, "rank")->required();

    auto *multiloop = app.add_subcommand("multiloop", "build a multiloop algebra from a specification");
    std::string spec_path;
    multiloop->add_option("spec", spec_path, "multiloop specification file")->required();

    auto *lietorus = app.add_subcommand("lietorus-check", "check the Lie torus axioms");
    std::string algebra_path, delta;
    lietorus->add_option("algebra", algebra_path, "multiloop specification or serialized graded algebra")->required();
    lietorus->add_option("--delta", delta, "root system label, e.g. A2 or BC1 (default: proposed)");

    auto *factor = app.add_subcommand("factor", "factor a word over A((t)) as g1 g2");
    std::string word_path, factor_spec;
    int coeff_vars = -1;
    factor->add_option("word", word_path, "word file")->required();
    factor->add_option("--algebra", factor_spec, "multiloop specification file")->required();
    factor->add_option("--coeff-vars", coeff_vars, "Laurent variables of A (0: A = Q; default: the algebra's)");

    auto *randword = app.add_subcommand("random-word", "print a random word over A((t)) from the seed");
    std::string rw_spec;
    unsigned letters = 4;
    int rw_vars = -1;
    randword->add_option("--algebra", rw_spec, "multiloop specification file")->required();
    randword->add_option("--letters", letters, "number of letters");
    randword->add_option("--coeff-vars", rw_vars, "Laurent variables of A");

    auto *cocycle = app.add_subcommand("cocycle", "finite-level cocycle computations");
    std::string cocycle_sub, cocycle_path;
    cocycle->add_option("action", cocycle_sub, "enumerate | exactness | diagonal")
        ->required()
        ->check(CLI::IsMember({"enumerate", "exactness", "diagonal"}));
    cocycle->add_option("config", cocycle_path, "cocycle configuration file")->required();

    std::vector<std::string> argv_store{"loopk"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto finish = [&](int code) {
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        err << "time " << ms << " ms\n";
        return code;
    };
    try {
        cfg.validate();
        if (!verify_path.empty()) {
            if (!app.get_subcommands().empty()) {
                throw invalid_input("--verify takes no subcommand");
            }
            const auto bundle = ReportBundle::parse(read_file(verify_path));
            const auto v = verify_bundle(bundle);
            out << "verify " << (v.ok ? "pass" : "fail") << ' ' << bundle.command << "\n" << "detail " << v.detail
                << "\n";
            return finish(v.ok ? 0 : 2);
        }
        ReportBundle b;
        if (build->parsed()) {
            b = cmd_algebra_build(type, rank, cfg);
        } else if (multiloop->parsed()) {
            b = cmd_multiloop(read_file(spec_path), cfg);
        } else if (lietorus->parsed()) {
            b = cmd_lietorus_check(read_file(algebra_path), delta, cfg);
        } else if (factor->parsed()) {
            b = cmd_factor(read_file(factor_spec), read_file(word_path), coeff_vars, cfg);
        } else if (randword->parsed()) {
            out << random_word(read_file(rw_spec), letters, rw_vars, cfg);
            return finish(0);
        } else if (cocycle->parsed()) {
            b = cmd_cocycle(cocycle_sub, read_file(cocycle_path), cfg);
        } else {
            out << app.help();
            return 1;
        }
        out << b.render();
        return finish(b.verdict == "pass" ? 0 : 2);
    } catch (const parse_error &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const invalid_input &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const math_error &e) {
        err << "math error: " << e.what() << "\n";
        return 2;
    } catch (const precision_exhausted &e) {
        err << "precision exhausted: " << e.what() << "\n";
        return 3;
    } catch (const budget_exceeded &e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 3;
    }
}

} // namespace loopk
