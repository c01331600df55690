// ncpcat: command-line access to the noncrossing partition category.
//
// Exit status: 0 success, 1 verification failure or no match, 2 usage or
// input error. Machine output goes to stdout as JSON (DOT or text only for
// export); a short summary goes to stderr.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ncp/category.hpp"
#include "ncp/complex.hpp"
#include "ncp/error.hpp"
#include "ncp/io.hpp"
#include "ncp/matrix.hpp"
#include "ncp/verify.hpp"

namespace {

using namespace ncp;

constexpr int kDefaultMaxN = 10;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int env_cap() {
    const char* raw = std::getenv("NCPCAT_MAX_N");
    if (!raw || !*raw) return 0;
    try {
        const int v = std::stoi(raw);
        if (v < 1) throw UsageError("NCPCAT_MAX_N must be positive");
        return v;
    } catch (const std::logic_error&) {
        throw UsageError(std::string("NCPCAT_MAX_N is not a positive integer: ") + raw);
    }
}

void require_n(int n) {
    const int cap = env_cap() ? env_cap() : kDefaultMaxN;
    if (n < 1 || n > cap) throw UsageError("n must be between 1 and " + std::to_string(cap));
}

void emit(const Json& j) { std::cout << j.dump() << '\n'; }

ClusterMorphism read_morphism(const std::string& arg, int n) {
    ClusterMorphism m = morphism_from_json(read_json(arg));
    if (m.source.n() != n) throw UsageError("morphism is on 1.." + std::to_string(m.source.n()));
    return m;
}

UnipotentMatrix read_matrix(const std::string& arg) {
    std::string body = arg;
    const auto first = body.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty matrix argument");
    if (body[first] != '{' && !std::isdigit(static_cast<unsigned char>(body[first]))) {
        std::ifstream in(body.substr(first));
        if (!in) throw ParseError("cannot read matrix file '" + body + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        body = buf.str();
    }
    const auto start = body.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && body[start] == '{') return matrix_from_json(read_json(body));
    return parse_matrix(body);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noncrossing partition category toolkit"};
    app.require_subcommand(1);
    std::uint64_t prop_seed = 1;
    app.add_option("--prop-seed", prop_seed, "Seed for property-test generation")->capture_default_str();

    int n = 0;
    std::function<void()> action;

    // objects
    auto* objects = app.add_subcommand("objects", "List the objects (noncrossing partitions)");
    bool obj_count = false, obj_by_rank = false, obj_json = false;
    objects->add_option("n", n, "Ground set size")->required();
    auto* oc = objects->add_flag("--count", obj_count, "Print the number of objects");
    auto* ob = objects->add_flag("--by-rank", obj_by_rank, "Print the number of objects of each rank");
    objects->add_flag("--json", obj_json, "Print objects as JSON values")->excludes(oc)->excludes(ob);
    oc->excludes(ob);
    objects->callback([&] {
        action = [&] {
            require_n(n);
            const auto ps = enumerate_partitions(n);
            if (obj_count) {
                emit(ps.size());
            } else if (obj_by_rank) {
                std::map<int, long long> hist;
                for (const auto& p : ps) ++hist[p.rank()];
                Json j = Json::object();
                for (const auto& [k, v] : hist) j[std::to_string(k)] = v;
                emit(j);
            } else {
                Json j = Json::array();
                for (const auto& p : ps) j.push_back(obj_json ? to_json(p) : Json(p.to_string()));
                emit(j);
            }
            std::cerr << ps.size() << " objects for n=" << n << '\n';
        };
    });

    // hom
    auto* homc = app.add_subcommand("hom", "List the morphisms between two objects");
    std::string src, dst;
    bool hom_count = false, hom_json = false;
    homc->add_option("n", n, "Ground set size")->required();
    homc->add_option("source", src, "Coarser partition, e.g. \"(1 2 3)\"")->required();
    homc->add_option("target", dst, "Finer partition, e.g. \"(1)(2)(3)\"")->required();
    auto* hc = homc->add_flag("--count", hom_count, "Print the number of morphisms");
    homc->add_flag("--json", hom_json, "Print the morphisms as JSON (default)")->excludes(hc);
    homc->callback([&] {
        action = [&] {
            require_n(n);
            const Partition a = read_partition(src, n);
            const Partition b = read_partition(dst, n);
            const auto& hs = hom(a, b);
            if (hom_count) {
                emit(hs.size());
            } else {
                Json j = Json::array();
                for (const auto& m : hs) j.push_back(to_json(m));
                emit(j);
            }
            std::cerr << hs.size() << " morphisms " << a.to_string() << " -> " << b.to_string() << '\n';
        };
    });

    // compose
    auto* comp = app.add_subcommand("compose", "Compose two morphisms, first then second");
    std::string first_arg, second_arg;
    comp->add_option("n", n, "Ground set size")->required();
    comp->add_option("first", first_arg, "Morphism JSON or file")->required();
    comp->add_option("second", second_arg, "Morphism JSON or file")->required();
    comp->callback([&] {
        action = [&] {
            require_n(n);
            const auto a = read_morphism(first_arg, n);
            const auto b = read_morphism(second_arg, n);
            if (a.target != b.source)
                throw Failure("not composable: " + a.target.to_string() + " != " + b.source.to_string());
            const auto c = compose(a, b);
            emit(to_json(c));
            std::cerr << "composite " << to_string(c) << '\n';
        };
    });

    // matrix
    auto* mat = app.add_subcommand("matrix", "Print the unipotent matrix of a morphism");
    std::string morph_arg;
    bool mat_text = false;
    mat->add_option("n", n, "Ground set size")->required();
    mat->add_option("morphism", morph_arg, "Morphism JSON or file")->required();
    mat->add_flag("--text", mat_text, "Print rows as text instead of JSON");
    mat->callback([&] {
        action = [&] {
            require_n(n);
            const auto g = g_matrix(read_morphism(morph_arg, n));
            if (mat_text)
                std::cout << g.to_string();
            else
                emit(to_json(g));
            std::cerr << n << "x" << n << " matrix\n";
        };
    });

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "Recover a morphism from its matrix");
    std::string matrix_arg;
    rec->add_option("n", n, "Ground set size")->required();
    rec->add_option("source", src, "Coarser partition")->required();
    rec->add_option("target", dst, "Finer partition")->required();
    rec->add_option("matrix", matrix_arg, "Matrix JSON, text rows, or file")->required();
    rec->callback([&] {
        action = [&] {
            require_n(n);
            const Partition a = read_partition(src, n);
            const Partition b = read_partition(dst, n);
            if (!refines(b, a)) throw UsageError(b.to_string() + " does not refine " + a.to_string());
            const auto result = reconstruct(a, b, read_matrix(matrix_arg));
            if (const auto* miss = std::get_if<NoMatch>(&result)) throw Failure(miss->reason);
            const auto& m = std::get<ClusterMorphism>(result);
            emit(to_json(m));
            std::cerr << "reconstructed " << to_string(m) << '\n';
        };
    });

    // verify
    auto* ver = app.add_subcommand("verify", "Run an exhaustive verification suite");
    std::string suite;
    ver->add_option("n", n, "Ground set size")->required();
    ver->add_option("suite", suite, "adjacency|compat|assoc|cubical|links|cells|relators|all")->required();
    ver->callback([&] {
        action = [&] {
            require_n(n);
            VerifyOptions options;
            options.cap_override = env_cap();
            options.seed = prop_seed;
            std::vector<std::string> names;
            Json skipped = Json::array();
            if (suite == "all") {
                for (const auto& s : suite_names()) {
                    if (n <= suite_cap(s, options))
                        names.push_back(s);
                    else
                        skipped.push_back(s);
                }
            } else {
                suite_cap(suite, options);
                names.push_back(suite);
            }
            Json report;
            report["n"] = n;
            report["suite"] = suite;
            bool passed = true;
            if (suite == "all") {
                report["objects"] = enumerate_partitions(n).size();
                const auto counts = morphism_counts(n);
                for (int k = 1; k < n; ++k)
                    report["rank" + std::to_string(k)] = counts.count(k) ? counts.at(k) : 0;
            }
            Json results = Json::array();
            long long checks = 0;
            for (const auto& s : names) {
                const auto r = run_suite(s, n, options);
                passed = passed && r.ok();
                checks += r.checks;
                results.push_back(to_json(r));
                std::cerr << (r.ok() ? "PASS " : "FAIL ") << s << " n=" << n << " (" << r.checks << " checks)\n";
                for (const auto& w : r.failures) std::cerr << "  " << w << '\n';
            }
            report["passed"] = passed;
            report["checks"] = checks;
            report["suites"] = std::move(results);
            if (!skipped.empty()) report["skipped"] = std::move(skipped);
            emit(report);
            if (!passed) throw Failure("verification failed");
        };
    });

    // export
    auto* exp = app.add_subcommand("export", "Export the Hasse diagram, a link, or the presentation");
    std::string what, object, format, side = "forward";
    exp->add_option("n", n, "Ground set size")->required();
    exp->add_option("what", what, "hasse|link|presentation")->required();
    exp->add_option("object", object, "Object whose link is exported");
    exp->add_option("--format", format, "dot|json|text")->required();
    exp->add_option("--side", side, "forward|backward|both (links only)")->capture_default_str();
    exp->callback([&] {
        action = [&] {
            require_n(n);
            auto bad = [&] { throw UsageError("cannot export " + what + " as " + format); };
            if (what == "hasse") {
                if (format == "dot")
                    std::cout << hasse_dot(n);
                else if (format == "json")
                    emit(hasse_json(n));
                else
                    bad();
            } else if (what == "link") {
                if (object.empty()) throw UsageError("export link needs an object");
                const Partition x = read_partition(object, n);
                SimplicialComplex k;
                if (side == "forward")
                    k = forward_link(x);
                else if (side == "backward")
                    k = backward_link(x);
                else if (side == "both")
                    k = vertex_link(x);
                else
                    throw UsageError("unknown link side '" + side + "'");
                if (format == "dot")
                    std::cout << to_dot(k, side + " link of " + x.to_string());
                else if (format == "json")
                    emit(to_json(k));
                else
                    bad();
                std::cerr << k.vertices().size() << " vertices, " << k.facets().size() << " facets\n";
            } else if (what == "presentation") {
                if (n < 2) throw UsageError("the presentation needs n >= 2");
                const auto p = presentation(n);
                if (format == "text")
                    std::cout << presentation_text(p);
                else if (format == "json")
                    emit(to_json(p));
                else
                    bad();
                std::cerr << p.generators.size() << " generators, " << p.relators.size() << " relators\n";
            } else {
                throw UsageError("unknown export target '" + what + "'");
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        action();
        return 0;
    } catch (const Failure& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
