#include <binom/io.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace binom;

namespace {

enum Exit { ok = 0, failed = 1, bad_input = 2 };

struct Options {
    std::string file, order = "degrevlex", beta, pos, strat, x0;
    int box = 0, degree_bound = 0;
    std::size_t budget = 20000, cap = 2000000, record_every = 100;
    double t = 10, dt = 1e-3, tol = 1e-8;
    bool pretty = false;
};

MonomialOrder order_of(const std::string& s)
{
    if (s == "degrevlex")
        return MonomialOrder::degrevlex();
    if (s == "lex")
        return MonomialOrder::lex();
    if (s == "deglex")
        return MonomialOrder::deglex();
    throw parse_error("unknown monomial order '" + s + "'");
}

void render(std::ostream& os, const Json& j, int indent)
{
    std::string pad(indent, ' ');
    auto scalar_row = [](const Json& a) {
        return std::all_of(a.begin(), a.end(), [](const Json& x) { return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const Json& y) { return y.is_primitive(); })); });
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        std::string key = j.is_object() ? it.key() : "-";
        if (v.is_primitive() || v.empty()) {
            os << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        } else if (v.is_array() && scalar_row(v)) {
            if (v.size() > 8 && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_array(); })) {
                os << pad << key << ": (" << v.size() << ")\n";
                for (auto& x : v)
                    os << pad << "  " << x.dump() << "\n";
            } else {
                os << pad << key << ": " << v.dump() << "\n";
            }
        } else {
            os << pad << key << ":\n";
            render(os, v, indent + 2);
        }
    }
}

Json options_json(const std::string& cmd, const Options& o)
{
    Json j;
    j["file"] = o.file;
    if (cmd == "ideal gb")
        j["order"] = o.order;
    if (cmd == "ideal decompose" || cmd == "ideal assoc") {
        j["budget"] = o.budget;
        j["degree_bound"] = o.degree_bound;
    }
    if (cmd == "horn andean" || cmd == "horn rank")
        j["beta"] = o.beta;
    if (cmd.rfind("game", 0) == 0) {
        if (cmd != "game move")
            j["box"] = o.box;
        if (cmd != "game quotient")
            j["cap"] = o.cap;
    }
    if (cmd == "game move")
        j["pos"] = o.pos;
    if (cmd == "game strategy")
        j["strat"] = o.strat;
    if (cmd == "chem simulate") {
        j["x0"] = o.x0;
        j["t"] = o.t;
        j["dt"] = o.dt;
        j["tol"] = o.tol;
        j["record_every"] = o.record_every;
    }
    return j;
}

struct Outcome {
    Json result;
    Json verification = Json::object();
    bool verified = true;
};

Outcome ideal_gb(const Options& o)
{
    auto I = io::ideal(io::read_file(o.file));
    auto G = reduced_groebner(I, order_of(o.order));
    Outcome out;
    out.result["basis"] = io::strings_of(G);
    out.result["ideal"] = io::json_of(G);
    return out;
}

Outcome ideal_decompose(const Options& o)
{
    auto I = io::ideal(io::read_file(o.file));
    DecompositionOptions opt;
    opt.budget = o.budget;
    opt.degree_bound = o.degree_bound;
    auto d = primary_decompose(I, opt);
    Outcome out;
    out.result = io::json_of(d, I.vars);
    out.verification["truncation"] = io::json_of(d.verification);
    out.verified = d.verification.kind == TruncationVerdict::Kind::equal;
    return out;
}

Outcome ideal_assoc(const Options& o)
{
    auto I = io::ideal(io::read_file(o.file));
    DecompositionOptions opt;
    opt.budget = o.budget;
    opt.degree_bound = o.degree_bound;
    auto d = primary_decompose(I, opt);
    Outcome out;
    out.result["primes"] = Json::array();
    for (auto& c : d.components)
        out.result["primes"].push_back(io::json_of(c.prime, I.vars));
    out.verification["truncation"] = io::json_of(d.verification);
    out.verified = d.verification.kind == TruncationVerdict::Kind::equal;
    return out;
}

HornSystem horn_system(const Options& o)
{
    auto h = io::horn(io::read_file(o.file));
    if (!o.beta.empty())
        h.beta = io::rational_list(o.beta);
    return HornSystem(h.B, h.A, h.beta);
}

std::vector<std::string> horn_vars(const HornSystem& sys)
{
    std::vector<std::string> v;
    for (std::size_t i = 0; i < sys.B.rows(); ++i)
        v.push_back("x" + std::to_string(i + 1));
    return v;
}

Json matrix_json(const IntegerMatrix& A)
{
    Json a = Json::array();
    for (auto& r : A.row_list())
        a.push_back(io::json_of(r));
    return a;
}

Outcome horn_rank(const Options& o)
{
    auto sys = horn_system(o);
    auto r = generic_rank(sys);
    Outcome out;
    out.result["A"] = matrix_json(sys.A);
    out.result["euler_operators"] = sys.euler_operators();
    out.result["rank"] = io::json_of(r, horn_vars(sys));
    if (!sys.beta.empty())
        out.result["finite_rank_at_beta"] = finite_rank_test(sys);
    out.verification["truncation"] = io::json_of(r.analysis.verification);
    out.verified = r.analysis.verification.kind == TruncationVerdict::Kind::equal;
    return out;
}

Outcome horn_andean(const Options& o)
{
    auto sys = horn_system(o);
    auto r = toral_andean_analysis(lattice_basis_ideal(sys.B, horn_vars(sys)), sys.A);
    Outcome out;
    out.result["A"] = matrix_json(sys.A);
    out.result["analysis"] = io::json_of(r, horn_vars(sys));
    if (!sys.beta.empty())
        out.result["finite_rank_at_beta"] = finite_rank_test(sys);
    out.verification["truncation"] = io::json_of(r.verification);
    out.verified = r.verification.kind == TruncationVerdict::Kind::equal;
    return out;
}

Json game_json(const LatticeGame& g)
{
    Json j;
    j["d"] = g.d();
    j["gamma"] = io::positions(g.rules.gamma);
    j["defeated"] = io::positions(g.defeated);
    Json l = Json::array();
    for (long x : g.functional)
        l.push_back(x);
    j["functional"] = l;
    return j;
}

Json box_certificate(const WinLossTable& t, const LatticeGame& g, bool& verified)
{
    Json v;
    v["box"] = io::json_of(t.box);
    v["exact"] = t.exact;
    auto bad = check_defining_conditions(g, t);
    v["defining_conditions"] = bad ? "violated" : "hold";
    if (bad) {
        v["violation"] = io::json_of(*bad);
        verified = false;
    }
    return v;
}

Outcome game_solve(const Options& o)
{
    auto g = io::game(io::read_file(o.file));
    auto t = compute_win_loss(g, uniform_box(g.d(), o.box), o.cap);
    Outcome out;
    out.result["game"] = game_json(g);
    out.result["table"] = io::json_of(t);
    out.verification["win_loss"] = box_certificate(t, g, out.verified);
    return out;
}

Outcome game_move(const Options& o)
{
    auto g = io::game(io::read_file(o.file));
    Exponent p = io::int_list(o.pos);
    if (static_cast<int>(p.size()) != g.d())
        throw invariant_violation("--pos: expected " + std::to_string(g.d()) + " coordinates");
    if (!g.on_board(p))
        throw invariant_violation("--pos: not a position on the game board");
    auto t = compute_win_loss(g, p, o.cap);
    Outcome out;
    out.result["position"] = io::json_of(p);
    out.result["status"] = status_name(t.status(p));
    auto m = winning_move(g, t, p);
    if (m) {
        out.result["move"] = io::json_of(*m);
        out.result["result"] = io::json_of(p - *m);
    } else {
        out.result["move"] = nullptr;
    }
    out.verification["win_loss"] = box_certificate(t, g, out.verified);
    return out;
}

Outcome game_quotient(const Options& o)
{
    auto g = io::game(io::read_file(o.file));
    auto q = misere_quotient(g, o.box);
    Outcome out;
    out.result["quotient"] = io::json_of(q, g.d());
    out.verification["box"] = o.box;
    out.verification["stable_under_doubling"] = q.finite;
    out.verified = q.associative() && q.commutative();
    return out;
}

Outcome game_strategy(const Options& o)
{
    auto g = io::game(io::read_file(o.file));
    AffineStratification s;
    Outcome out;
    if (o.strat.empty()) {
        auto sol = squarefree_solve(g);
        out.result["W0"] = io::positions(sol.W0);
        s = sol.stratification;
    } else {
        s = io::stratification(io::read_file(o.strat), g.d());
    }
    auto t = compute_win_loss(g, uniform_box(g.d(), o.box), o.cap);
    auto v = verify_stratification(s, g, t);
    auto r = rational_strategy(s, o.box);
    out.result["stratification"] = io::json_of(s);
    out.result["strategy"] = r.str();
    Json vj = box_certificate(t, g, out.verified);
    vj["stratification"] = v.equal ? "Equal" : "Mismatch";
    vj["checked"] = v.checked;
    if (v.mismatch)
        vj["mismatch"] = io::json_of(*v.mismatch);
    out.verification["win_loss"] = vj;
    out.verified = out.verified && v.equal;
    return out;
}

Outcome chem_simulate(const Options& o)
{
    auto net = io::network(io::read_file(o.file));
    std::vector<double> x0;
    for (auto& q : io::rational_list(o.x0))
        x0.push_back(q.convert_to<double>());
    auto tr = simulate(net, x0, o.t, o.dt, 1e-12, o.record_every);
    Outcome out;
    out.result["species"] = net.species;
    out.result["times"] = tr.times;
    out.result["states"] = tr.states;
    out.result["rejected_steps"] = tr.rejected;
    Json cons = Json::array();
    for (auto& c : conserved_quantities(net).conserved_basis)
        cons.push_back(io::json_of(c));
    out.result["conserved"] = cons;
    out.verification["max_drift"] = tr.max_drift;
    out.verification["tolerance"] = o.tol;
    out.verified = tr.max_drift <= o.tol;
    return out;
}

Outcome chem_equilibrium(const Options& o)
{
    auto net = io::network(io::read_file(o.file));
    auto e = detailed_balanced_equilibrium(net);
    Outcome out;
    out.result = io::json_of(e, net);
    if (e.feasible) {
        // residual of every binomial at the double-precision point
        double worst = 0;
        for (auto& r : net.reactions) {
            double f = r.k_fwd.convert_to<double>() * detail::monomial_value(e.point, r.a);
            double b = r.k_rev.convert_to<double>() * detail::monomial_value(e.point, r.b);
            worst = std::max(worst, std::abs(f - b) / std::max(1.0, std::abs(f)));
        }
        out.verification["relative_residual"] = worst;
    }
    return out;
}

Outcome chem_boundary(const Options& o)
{
    auto net = io::network(io::read_file(o.file));
    Outcome out;
    out.result = io::json_of(boundary_equilibria(net), net);
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"binomial ideals, Horn systems, lattice games and mass-action networks"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--pretty", o.pretty, "render a readable table instead of JSON");

    std::map<std::string, std::function<Outcome(const Options&)>> table;
    std::vector<std::pair<CLI::App*, std::string>> leaves;
    auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, std::function<Outcome(const Options&)> f) {
        auto* c = group->add_subcommand(name, help);
        c->add_option("file", o.file, "input JSON")->required()->check(CLI::ExistingFile);
        c->add_flag("--pretty", o.pretty, "render a readable table instead of JSON");
        table[group->get_name() + " " + name] = std::move(f);
        leaves.push_back({c, group->get_name() + " " + name});
        return c;
    };

    auto* ideal = app.add_subcommand("ideal", "binomial ideals")->require_subcommand(1);
    leaf(ideal, "gb", "reduced Groebner basis", ideal_gb)->add_option("--order", o.order, "degrevlex, deglex or lex");
    for (auto name : {"decompose", "assoc"}) {
        auto* c = leaf(ideal, name, std::string(name) == "decompose" ? "primary decomposition" : "associated primes",
                       std::string(name) == "decompose" ? ideal_decompose : ideal_assoc);
        c->add_option("--box", o.budget, "monomial enumeration budget");
        c->add_option("--degree-bound", o.degree_bound, "truncation degree for verification (0: automatic)");
    }

    auto* horn = app.add_subcommand("horn", "Horn hypergeometric systems")->require_subcommand(1);
    leaf(horn, "rank", "generic rank and its summands", horn_rank)->add_option("--beta", o.beta, "parameter vector, comma separated");
    leaf(horn, "andean", "toral/Andean split and arrangement", horn_andean)->add_option("--beta", o.beta, "parameter vector, comma separated");

    auto* game = app.add_subcommand("game", "lattice games")->require_subcommand(1);
    auto solve = leaf(game, "solve", "win/loss table on a box", game_solve);
    solve->add_option("--box", o.box, "box side (default 12)");
    solve->add_option("--cap", o.cap, "region size cap");
    auto move = leaf(game, "move", "winning move from a position", game_move);
    move->add_option("--pos", o.pos, "position, comma separated")->required();
    move->add_option("--cap", o.cap, "region size cap");
    leaf(game, "quotient", "misere quotient", game_quotient)->add_option("--box", o.box, "box side (default 24)");
    auto strat = leaf(game, "strategy", "check a stratification and emit its rational strategy", game_strategy);
    strat->add_option("--strat", o.strat, "stratification JSON")->check(CLI::ExistingFile);
    strat->add_option("--box", o.box, "box side (default 12)");
    strat->add_option("--cap", o.cap, "region size cap");

    auto* chem = app.add_subcommand("chem", "mass-action networks")->require_subcommand(1);
    auto sim = leaf(chem, "simulate", "fixed-step RK4 trajectory", chem_simulate);
    sim->add_option("--x0", o.x0, "initial state, comma separated")->required();
    sim->add_option("--t", o.t, "end time");
    sim->add_option("--dt", o.dt, "step size");
    sim->add_option("--tol", o.tol, "allowed drift of the conserved quantities");
    sim->add_option("--record-every", o.record_every, "record every n-th step")->check(CLI::PositiveNumber);
    leaf(chem, "equilibrium", "detailed-balanced equilibrium", chem_equilibrium);
    leaf(chem, "boundary", "boundary zero sets of the detailed-balance ideal", chem_boundary);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return bad_input;
    }

    std::string cmd;
    for (auto& [c, name] : leaves)
        if (c->parsed())
            cmd = name;

    if (cmd.rfind("game", 0) == 0 && cmd != "game move" && o.box == 0)
        o.box = cmd == "game quotient" ? 24 : 12;

    Json report;
    report["command"] = cmd;
    report["options"] = options_json(cmd, o);
    int code = ok;
    try {
        auto out = table.at(cmd)(o);
        report["result"] = out.result;
        report["verification"] = out.verification;
        code = out.verified ? ok : failed;
        report["status"] = out.verified ? "ok" : "verification_failed";
    } catch (const parse_error& e) {
        report["status"] = "parse_error";
        report["error"] = e.what();
        code = bad_input;
    } catch (const invariant_violation& e) {
        report["status"] = "invariant_violation";
        report["error"] = e.what();
        code = bad_input;
    } catch (const error& e) {
        report["status"] = "error";
        report["error"] = e.what();
        code = failed;
    }
    report["exit"] = code;
    if (o.pretty)
        render(std::cout, report, 0);
    else
        std::cout << report.dump(2) << "\n";
    return code;
}
