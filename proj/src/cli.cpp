#include "ffseq/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "ffseq/bounds.hpp"
#include "ffseq/verify.hpp"

namespace ffseq::cli {

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t parse_uint(const std::string& text, const char* what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text[0] == '-') throw UsageError(std::string("bad ") + what + ": " + text);
    return v;
}

// digits needed to write n - 1 in base q, at least 1
std::size_t digits_for(std::uint64_t n, std::uint32_t q) {
    std::size_t len = 0;
    for (std::uint64_t x = n > 0 ? n - 1 : 0; x; x /= q) ++len;
    return std::max<std::size_t>(len, 1);
}

// degree of a polynomial written as c x^k + ... + c
std::uint64_t parse_poly_degree(const std::string& text) {
    std::uint64_t deg = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != 'x') continue;
        std::uint64_t k = 1;
        if (i + 1 < text.size() && text[i + 1] == '^') {
            const auto end = text.find('+', i);
            k = parse_uint(text.substr(i + 2, end == std::string::npos ? std::string::npos : end - i - 2), "exponent");
        }
        deg = std::max(deg, k);
    }
    return deg;
}

std::string join(const std::vector<std::uint32_t>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

SeqSpec make_spec(const RunConfig& c, const FieldPtr& fq) {
    if (c.field == FieldKind::elliptic_f2 && fq->q() != 2) throw UsageError("the elliptic field is defined over F_2 only");
    auto F = make_function_field(c.field, fq);
    if (c.places.empty()) {
        const std::size_t s = c.s.value_or(1);
        if (s == 0) throw UsageError("--s must be positive");
        return SeqSpec::first_places(F, s, c.mode);
    }
    if (c.s && *c.s != c.places.size()) throw UsageError("--s disagrees with the number of --places");
    return SeqSpec::make(F, resolve_places(*F, c.places), c.mode);
}

int cmd_gen(const RunConfig& c, std::ostream& out) {
    if (!c.N || !c.m) throw UsageError("gen needs --N and --m");
    const auto fq = Field::create(c.p, c.k);
    const auto spec = make_spec(c, fq);
    const std::size_t J = c.J.value_or(*c.m);
    const std::size_t R = c.R.value_or(digits_for(*c.N, fq->q()));
    if (*c.m > J) throw UsageError("--m exceeds --J");
    if (digits_for(*c.N, fq->q()) > R) throw UsageError("--N needs more than R columns");
    const auto mats = build_matrices(spec, J, R);
    write_points(out, generate_first(*fq, mats, *c.N, *c.m), c.format, c.precision);
    return 0;
}

int cmd_matrices(const RunConfig& c, std::ostream& out) {
    const auto fq = Field::create(c.p, c.k);
    const auto spec = make_spec(c, fq);
    write_matrices(out, spec, build_matrices(spec, c.J.value_or(16), c.R.value_or(16)));
    return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    if (c.M < 1) throw UsageError("--M must be positive");
    const auto fq = Field::create(c.p, c.k);
    const auto spec = make_spec(c, fq);
    const int u = c.u.value_or(spec.u);
    if (u < 0) throw UsageError("--u must be nonnegative");
    const std::size_t J = static_cast<std::size_t>(c.M);
    std::size_t R = J;
    {
        std::uint64_t last = c.Kmax + 1;
        for (int i = 0; i < c.M; ++i) last *= fq->q();
        R = std::max(R, digits_for(last, fq->q()));
    }
    const auto mats = build_matrices(spec, J, R);
    const auto& F = *fq;
    const int g = spec.field->genus();

    out << "q=" << F.q() << " field=" << to_string(spec.field->kind()) << " g=" << g << " s=" << spec.dimension()
        << " mode=" << to_string(spec.mode) << " J=" << J << " R=" << R << '\n';
    out << "places:";
    for (const auto& P : spec.places) out << ' ' << P.to_string();
    out << "\ne=(" << join(spec.e, ",") << ") v=" << spec.v << " u=" << u << '\n';

    std::vector<VerifyReport> reps;
    reps.push_back(seq_rank_check(F, mats, u, spec.e, c.M));
    reps.push_back(sequence_block_check(F, mats, u, spec.e, c.M, c.Kmax));
    if (spec.mode == Mode::finite_row) {
        reps.push_back(row_length_audit(mats, g, spec.v, spec.dimension()));
    } else {
        VerifyReport skip;
        skip.property = "row_lengths";
        skip.skipped = true;
        skip.note = "plain mode";
        reps.push_back(skip);
    }
    bool ok = true;
    for (const auto& r : reps) {
        out << r.property << (r.range.empty() ? "" : " ") << r.range << ": " << r.to_string();
        if (r.skipped && !r.note.empty()) out << " (" << r.note << ')';
        out << '\n';
        ok = ok && (r.pass || r.skipped);
    }
    const auto mt = minimal_t(F, mats, c.M);
    out << "minimal_t m<=" << mt.M << ": t=" << mt.t << " (from u,e: " << t_from_ue(u, spec.e) << ")\n";
    ok = ok && mt.report.pass;
    out << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 1;
}

int cmd_discrepancy(const RunConfig& c, std::ostream& out) {
    if (!c.N || *c.N == 0) throw UsageError("discrepancy needs --N >= 1");
    const auto fq = Field::create(c.p, c.k);
    const auto spec = make_spec(c, fq);
    if (spec.dimension() > 3) throw UsageError("exact discrepancy supports s <= 3");
    const std::size_t m = c.m.value_or(digits_for(*c.N, fq->q()));
    const std::size_t J = c.J.value_or(m);
    const std::size_t R = c.R.value_or(digits_for(*c.N, fq->q()));
    if (m > J) throw UsageError("--m exceeds --J");
    if (digits_for(*c.N, fq->q()) > R) throw UsageError("--N needs more than R columns");
    const auto mats = build_matrices(spec, J, R);
    const auto pts = RationalPointSet::from_digits(generate_first(*fq, mats, *c.N, m));
    const Rational d = star_discrepancy_exact(pts);
    const Decimal approx = Decimal(numerator(d)) / Decimal(denominator(d));
    out << "N=" << *c.N << " m=" << m << " s=" << spec.dimension() << '\n';
    out << "D*=" << d << '\n';
    out << "D*~" << approx.str(20) << '\n';
    return 0;
}

int cmd_bounds(const RunConfig& c, std::ostream& out) {
    if (c.e.empty()) throw UsageError("bounds needs --e");
    for (auto ei : c.e)
        if (ei == 0) throw UsageError("--e entries must be positive");
    const std::uint32_t q = Field::create(c.p, c.k)->q();
    const int u = c.u.value_or(0);
    if (u < 0) throw UsageError("--u must be nonnegative");
    const int t = c.t.value_or(t_from_ue(u, c.e));
    if (t < 0) throw UsageError("--t must be nonnegative");
    const auto s = static_cast<std::uint32_t>(c.e.size());

    const Decimal fk = c_fk(q, s, static_cast<std::uint32_t>(t));
    const auto tz = c_tez(q, static_cast<std::uint32_t>(u), c.e);
    const auto cond = compare_condition(q, c.e);
    constexpr int digits = 20;
    out << "b " << q << '\n'
        << "s " << s << '\n'
        << "u " << u << '\n'
        << "e " << join(c.e, ",") << '\n'
        << "t " << t << '\n'
        << "c_FK " << fk.str(digits) << '\n'
        << "c_FK_lower " << c_fk_lower(q, s, static_cast<std::uint32_t>(t)).str(digits) << '\n'
        << "c_Tez " << tz.value.str(digits) << '\n'
        << "c_Tez_estimate " << tz.estimate.str(digits) << '\n'
        << "ratio " << Decimal(fk / tz.value).str(digits) << '\n'
        << "ratio_lower_bound " << cond.ratio_lower_bound.str(digits) << '\n'
        << "tez_better " << (cond.tez_better ? "true" : "false") << '\n';
    return 0;
}

}  // namespace

std::pair<std::uint32_t, std::uint32_t> parse_prime_power(const std::string& text) {
    const auto caret = text.find('^');
    if (caret != std::string::npos) {
        const auto p = parse_uint(text.substr(0, caret), "q");
        const auto k = parse_uint(text.substr(caret + 1), "q");
        if (!is_prime(p) || k == 0) throw UsageError("q must be p^k with p prime and k >= 1: " + text);
        std::uint64_t q = 1;
        for (std::uint64_t i = 0; i < k; ++i)
            if ((q *= p) > Field::kMaxOrder) throw UsageError("q too large: " + text);
        return {static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k)};
    }
    const auto q = parse_uint(text, "q");
    if (q < 2 || q > Field::kMaxOrder) throw UsageError("q out of range: " + text);
    std::uint64_t p = 2;
    while (q % p) ++p;
    std::uint64_t rest = q;
    std::uint32_t k = 0;
    while (rest % p == 0) rest /= p, ++k;
    if (rest != 1) throw UsageError("q is not a prime power: " + text);
    return {static_cast<std::uint32_t>(p), k};
}

std::vector<Place> resolve_places(const FunctionField& F, const std::vector<std::string>& tokens) {
    std::vector<Place> out;
    for (const auto& tok : tokens) {
        if (!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos) {
            const auto idx = parse_uint(tok, "place index");
            if (idx == 0 || idx > 4096) throw UsageError("place index out of range: " + tok);
            out.push_back(F.places(idx).back());
            continue;
        }
        // printed form "deg:data", or x^2+x+1 style for rational places
        const auto colon = tok.find(':');
        const bool printed = colon != std::string::npos;
        std::uint64_t deg = 0;
        if (printed) {
            deg = parse_uint(tok.substr(0, colon), "place degree");
        } else if (F.kind() == FieldKind::rational) {
            deg = parse_poly_degree(tok);
        } else {
            throw UsageError("bad place: " + tok);
        }
        bool found = false;
        for (std::size_t count = 16; !found && count <= 4096; count *= 2) {
            const auto ps = F.places(count);
            for (const auto& P : ps)
                if (printed ? P.to_string() == tok : pretty(P.below) == tok) {
                    out.push_back(P);
                    found = true;
                    break;
                }
            if (ps.back().degree > deg) break;
        }
        if (!found) throw UsageError("no such place: " + tok);
    }
    return out;
}

int dispatch(const RunConfig& config, std::ostream& out) {
    try {
        switch (config.command) {
            case Command::gen: return cmd_gen(config, out);
            case Command::matrices: return cmd_matrices(config, out);
            case Command::verify: return cmd_verify(config, out);
            case Command::discrepancy: return cmd_discrepancy(config, out);
            case Command::bounds: return cmd_bounds(config, out);
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    } catch (const std::out_of_range& ex) {
        throw UsageError(ex.what());
    } catch (const std::domain_error& ex) {
        throw UsageError(ex.what());
    }
    return 2;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Digital sequences from global function fields"};
    app.require_subcommand(1);

    RunConfig c;
    std::string q = "2", field = "rational", mode = "plain", format = "floats", e_text;
    std::size_t s = 0, J = 0, R = 0, m = 0;
    std::uint64_t N = 0;
    int u = 0, t = 0;
    std::vector<std::string> places;

    std::map<const CLI::App*, Command> commands;
    std::map<std::string, CLI::Option*> opts;
    auto add = [&](CLI::App* sub, const std::string& name, CLI::Option* o) { opts[sub->get_name() + name] = o; };

    auto common = [&](CLI::App* sub) {
        add(sub, "q", sub->add_option("--q", q, "field size, p^k or q"));
        add(sub, "field", sub->add_option("--field", field, "rational | elliptic")->check(CLI::IsMember({"rational", "elliptic", "elliptic_f2"})));
        add(sub, "s", sub->add_option("--s", s, "dimension"));
        add(sub, "places", sub->add_option("--places", places, "places by index or printed form (default: first s)"));
        add(sub, "mode", sub->add_option("--mode", mode, "plain | finite_row")->check(CLI::IsMember({"plain", "finite_row"})));
        sub->add_option("--out", c.out, "output file");
    };

    auto* gen = app.add_subcommand("gen", "emit the first N points with m digits");
    common(gen);
    add(gen, "J", gen->add_option("--J", J, "matrix rows"));
    add(gen, "R", gen->add_option("--R", R, "matrix columns"));
    add(gen, "N", gen->add_option("--N", N, "number of points")->required());
    add(gen, "m", gen->add_option("--m", m, "digits per coordinate")->required());
    gen->add_option("--format", format, "floats | digits")->check(CLI::IsMember({"floats", "digits"}));
    gen->add_option("--precision", c.precision, "significant digits for floats")->check(CLI::Range(1, 40));
    commands[gen] = Command::gen;

    auto* mats = app.add_subcommand("matrices", "dump generating matrices");
    common(mats);
    add(mats, "J", mats->add_option("--J", J, "matrix rows (default 16)"));
    add(mats, "R", mats->add_option("--R", R, "matrix columns (default 16)"));
    commands[mats] = Command::matrices;

    auto* ver = app.add_subcommand("verify", "rank, block, row-length and t checks");
    common(ver);
    ver->add_option("--M", c.M, "largest m checked")->check(CLI::Range(1, 40));
    ver->add_option("--Kmax", c.Kmax, "largest block index for the point-count check");
    add(ver, "u", ver->add_option("--u", u, "u to check (default: genus)"));
    commands[ver] = Command::verify;

    auto* disc = app.add_subcommand("discrepancy", "exact star discrepancy of the first N points (s <= 3)");
    common(disc);
    add(disc, "J", disc->add_option("--J", J, "matrix rows"));
    add(disc, "R", disc->add_option("--R", R, "matrix columns"));
    add(disc, "N", disc->add_option("--N", N, "number of points")->required());
    add(disc, "m", disc->add_option("--m", m, "digits per coordinate"));
    commands[disc] = Command::discrepancy;

    auto* bnd = app.add_subcommand("bounds", "discrepancy constant table");
    add(bnd, "q", bnd->add_option("--q", q, "base, p^k or q"));
    bnd->add_option("--e", e_text, "comma-separated e vector")->required();
    add(bnd, "u", bnd->add_option("--u", u, "u (default 0)"));
    add(bnd, "t", bnd->add_option("--t", t, "t (default u + sum(e_i - 1))"));
    bnd->add_option("--out", c.out, "output file");
    commands[bnd] = Command::bounds;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << '\n' << app.help();
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    auto given = [&](const std::string& key) {
        auto it = opts.find(name + key);
        return it != opts.end() && it->second->count() > 0;
    };

    try {
        c.command = commands.at(sub);
        std::tie(c.p, c.k) = parse_prime_power(q);
        c.field = parse_field_kind(field);
        c.mode = parse_mode(mode);
        c.format = format == "digits" ? PointFormat::digits : PointFormat::floats;
        if (given("s")) c.s = s;
        c.places = places;
        if (given("J")) c.J = J;
        if (given("R")) c.R = R;
        if (given("m")) c.m = m;
        if (given("N")) c.N = N;
        if (given("u")) c.u = u;
        if (given("t")) c.t = t;
        if (!e_text.empty()) {
            std::stringstream ss(e_text);
            for (std::string tok; std::getline(ss, tok, ',');)
                c.e.push_back(static_cast<std::uint32_t>(parse_uint(tok, "e entry")));
        }

        if (c.out.empty()) return dispatch(c, out);
        std::ostringstream buf;
        const int status = dispatch(c, buf);
        std::ofstream file(c.out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + c.out);
        file << buf.str();
        return status;
    } catch (const UsageError& ex) {
        err << "error: " << ex.what() << '\n' << sub->help();
        return 2;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n' << sub->help();
        return 2;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    }
}

}  // namespace ffseq::cli
