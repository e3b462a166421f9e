#include "adelic/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "adelic/adeles.hpp"
#include "adelic/approx.hpp"
#include "adelic/hensel.hpp"
#include "adelic/padic.hpp"

namespace adelic {

namespace {

const char* kUsage =
    "usage: adelic <command> [args]\n"
    "\n"
    "commands:\n"
    "  vp X PLACE [--field d]          valuation of X at a finite place\n"
    "  product-check X [--field d]     product over all places (exactly 1)\n"
    "  padic eval X P N                p-adic expansion of a rational\n"
    "  padic add|mul A B               arithmetic on p-adic literals\n"
    "  padic inv A                     inverse of a p-adic literal\n"
    "  hensel root POLY P A0 N         Newton lift of a simple root mod p\n"
    "  hensel factor POLY P G H N      Hensel lift of a coprime factorization\n"
    "  approx --at PLACE=ELEM ... --eps E [--field d]\n"
    "                                  weak approximation with certificate\n"
    "  idele content|ideal|lcount IDELE [--field d]\n"
    "  classnum D                      class number of Q(sqrt(D)), D < 0\n"
    "  unit D                          fundamental unit of Q(sqrt(D)), D > 1\n"
    "  sunit-rank --S PLACES --gen G ... [--field d] [--log]\n"
    "  --input FILE                    run one command per line\n";

struct Args {
    std::vector<std::string> positional;
    std::vector<std::pair<std::string, std::string>> options;  // --key value
    bool log_flag = false;

    bool has(const std::string& key) const {
        for (const auto& [k, _] : options)
            if (k == key) return true;
        return false;
    }
    std::string get(const std::string& key) const {
        for (const auto& [k, v] : options)
            if (k == key) return v;
        throw validation_error("missing option --" + key);
    }
    std::vector<std::string> get_all(const std::string& key) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : options)
            if (k == key) out.push_back(v);
        return out;
    }
};

Args parse_args(const std::vector<std::string>& argv, size_t start) {
    Args out;
    for (size_t i = start; i < argv.size(); ++i) {
        const std::string& a = argv[i];
        if (a == "--log") {
            out.log_flag = true;
        } else if (a.rfind("--", 0) == 0 && a.size() > 2 && !std::isdigit(a[2])) {
            auto eq = a.find('=');
            if (eq != std::string::npos) {
                out.options.push_back({a.substr(2, eq - 2), a.substr(eq + 1)});
            } else {
                if (i + 1 >= argv.size()) throw validation_error("option " + a + " needs a value");
                out.options.push_back({a.substr(2), argv[++i]});
            }
        } else {
            out.positional.push_back(a);
        }
    }
    return out;
}

NumberField field_from(const Args& args) {
    if (!args.has("field")) return NumberField::rationals();
    long d;
    try {
        d = std::stol(args.get("field"));
    } catch (...) {
        throw validation_error("--field expects an integer");
    }
    return NumberField::quadratic(make_quad_field(d));
}

long parse_long_arg(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw validation_error("");
        return v;
    } catch (...) {
        throw validation_error(std::string("expected an integer for ") + what + ": '" + s + "'");
    }
}

std::string significant_digits(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

int cmd_vp(const Args& args, std::ostream& out) {
    if (args.positional.size() != 2) throw validation_error("vp expects X and PLACE");
    NumberField K = field_from(args);
    Place v = parse_place(K, args.positional[1]);
    if (v.archimedean) throw validation_error("vp is defined at finite places");
    FieldElement x = parse_element(K, args.positional[0]);
    out << fe_valuation(x, v.prime).str() << "\n";
    return 0;
}

int cmd_product_check(const Args& args, std::ostream& out) {
    if (args.positional.size() != 1) throw validation_error("product-check expects X");
    NumberField K = field_from(args);
    FieldElement x = parse_element(K, args.positional[0]);
    if (fe_is_zero(x)) throw validation_error("product formula undefined at zero");
    out << format_rational(fe_product_formula(x)) << "\n";
    return 0;
}

int cmd_padic(const Args& args, std::ostream& out) {
    if (args.positional.empty()) throw validation_error("padic expects a subcommand");
    const std::string& sub = args.positional[0];
    if (sub == "eval") {
        if (args.positional.size() != 4)
            throw validation_error("padic eval expects X P N");
        Rational x = parse_rational(args.positional[1]);
        long p = parse_long_arg(args.positional[2], "p");
        long N = parse_long_arg(args.positional[3], "N");
        out << padic_render(padic_from_rational(x, p, N)) << "\n";
        return 0;
    }
    if (sub == "add" || sub == "mul") {
        if (args.positional.size() != 3)
            throw validation_error("padic " + sub + " expects two literals");
        PadicNumber a = padic_parse(args.positional[1]);
        PadicNumber b = padic_parse(args.positional[2]);
        out << padic_render(sub == "add" ? padic_add(a, b) : padic_mul(a, b)) << "\n";
        return 0;
    }
    if (sub == "inv") {
        if (args.positional.size() != 2) throw validation_error("padic inv expects one literal");
        out << padic_render(padic_inv(padic_parse(args.positional[1]))) << "\n";
        return 0;
    }
    throw validation_error("unknown padic subcommand: " + sub);
}

int cmd_hensel(const Args& args, std::ostream& out) {
    if (args.positional.empty()) throw validation_error("hensel expects a subcommand");
    const std::string& sub = args.positional[0];
    if (sub == "root") {
        if (args.positional.size() != 5)
            throw validation_error("hensel root expects POLY P A0 N");
        Poly f = parse_poly(args.positional[1]);
        long p = parse_long_arg(args.positional[2], "p");
        long a0 = parse_long_arg(args.positional[3], "a0");
        long N = parse_long_arg(args.positional[4], "N");
        out << padic_render(lift_root(f, p, a0, N)) << "\n";
        return 0;
    }
    if (sub == "factor") {
        if (args.positional.size() != 6)
            throw validation_error("hensel factor expects POLY P G H N");
        Poly f = parse_poly(args.positional[1]);
        long p = parse_long_arg(args.positional[2], "p");
        Poly G = parse_poly(args.positional[3]);
        Poly H = parse_poly(args.positional[4]);
        long N = parse_long_arg(args.positional[5], "N");
        auto [g, h] = lift_factorization(f, p, G, H, N);
        out << "g = " << format_poly(g) << "\n";
        out << "h = " << format_poly(h) << "\n";
        return 0;
    }
    throw validation_error("unknown hensel subcommand: " + sub);
}

int cmd_approx(const Args& args, std::ostream& out) {
    NumberField K = field_from(args);
    auto at = args.get_all("at");
    if (at.empty()) throw validation_error("approx expects at least one --at PLACE=ELEMENT");
    Rational eps = parse_rational(args.get("eps"));
    std::vector<ApproxTarget> targets;
    for (const std::string& spec : at) {
        auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw validation_error("--at expects PLACE=ELEMENT, got '" + spec + "'");
        Place v = parse_place(K, spec.substr(0, eq));
        FieldElement target = parse_element(K, spec.substr(eq + 1));
        targets.push_back({v, target});
    }
    FieldElement x = weak_approximation(K, targets, eps);
    out << format_element(x) << "\n";
    return 0;
}

int cmd_idele(const Args& args, std::ostream& out) {
    if (args.positional.size() != 2)
        throw validation_error("idele expects a subcommand and an idele literal");
    NumberField K = field_from(args);
    const std::string& sub = args.positional[0];
    Idele x = parse_idele(K, args.positional[1]);
    if (sub == "content") {
        out << format_rational(content(x)) << "\n";
        return 0;
    }
    if (sub == "ideal") {
        out << format_ideal(to_fractional_ideal(x)) << "\n";
        return 0;
    }
    if (sub == "lcount") {
        out << count_L(x) << "\n";
        return 0;
    }
    throw validation_error("unknown idele subcommand: " + sub);
}

int cmd_classnum(const Args& args, std::ostream& out) {
    if (args.positional.size() != 1) throw validation_error("classnum expects D");
    long d = parse_long_arg(args.positional[0], "D");
    auto forms = class_group_imag_quad(d);
    std::ostringstream buf;
    buf << "h = " << forms.size() << "\n";
    for (const auto& F : forms) buf << format_form(F) << "\n";
    out << buf.str();
    return 0;
}

int cmd_unit(const Args& args, std::ostream& out) {
    if (args.positional.size() != 1) throw validation_error("unit expects D");
    long d = parse_long_arg(args.positional[0], "D");
    out << format_quad(fundamental_unit_real_quad(d)) << "\n";
    return 0;
}

int cmd_sunit_rank(const Args& args, std::ostream& out) {
    NumberField K = field_from(args);
    std::vector<Place> S;
    {
        std::string spec = args.get("S");
        std::string cur;
        for (char c : spec + ",") {
            if (c == ',') {
                if (!cur.empty()) S.push_back(parse_place(K, cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
    }
    std::vector<FieldElement> gens;
    for (const std::string& g : args.get_all("gen")) gens.push_back(parse_element(K, g));
    if (gens.empty()) throw validation_error("sunit-rank expects at least one --gen");
    unsigned rank = s_unit_rank(K, S, gens);
    std::ostringstream buf;
    if (args.log_flag) {
        for (const auto& g : gens) {
            auto v = log_embedding(g, S);
            buf << "log " << format_element(g) << " =";
            for (double c : v) buf << " " << significant_digits(c, 12);
            buf << "\n";
        }
    }
    buf << rank << "\n";
    out << buf.str();
    return 0;
}

std::vector<std::string> split_command_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    bool have = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
            have = true;
            continue;
        }
        if (!quoted && std::isspace(static_cast<unsigned char>(c))) {
            if (have) out.push_back(cur);
            cur.clear();
            have = false;
            continue;
        }
        cur.push_back(c);
        have = true;
    }
    if (quoted) throw validation_error("unbalanced quote in batch line: " + line);
    if (have) out.push_back(cur);
    return out;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_batch(const std::string& path, std::ostream& out, std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "cannot open input file: " << path << "\n";
        return 2;
    }
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> words = split_command_line(line);
        if (words.empty() || words[0][0] == '#') continue;
        int code = dispatch(words, out, err);
        if (code != 0) return code;
    }
    return 0;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        err << kUsage;
        return 2;
    }
    const std::string& cmd = args[0];
    try {
        if (cmd == "--input") {
            if (args.size() != 2) throw validation_error("--input expects a file");
            return run_batch(args[1], out, err);
        }
        Args parsed = parse_args(args, 1);
        if (cmd == "vp") return cmd_vp(parsed, out);
        if (cmd == "product-check") return cmd_product_check(parsed, out);
        if (cmd == "padic") return cmd_padic(parsed, out);
        if (cmd == "hensel") return cmd_hensel(parsed, out);
        if (cmd == "approx") return cmd_approx(parsed, out);
        if (cmd == "idele") return cmd_idele(parsed, out);
        if (cmd == "classnum") return cmd_classnum(parsed, out);
        if (cmd == "unit") return cmd_unit(parsed, out);
        if (cmd == "sunit-rank") return cmd_sunit_rank(parsed, out);
        err << "unknown command: " << cmd << "\n" << kUsage;
        return 2;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return dispatch(args, out, err);
}

}  // namespace adelic
