// Command-line front end: Betti vectors, presentations and verification suites.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "strata/betti_recursion.hpp"
#include "strata/cache.hpp"
#include "strata/transfer.hpp"

using namespace strata;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string family = "real";
    int ell = 0;
    std::optional<int> max_degree;
    bool json = false;
    bool timing = false;
    std::string cache_dir;
};

Family checked_family(const Common& c) {
    Family f = parse_family(c.family);
    if (c.ell < min_ell(f) || c.ell > kMaxMarks - 1) {
        throw UsageError("--ell must be at least " + std::to_string(min_ell(f)) + " for the " + c.family + " family");
    }
    if (c.max_degree && *c.max_degree < 0) {
        throw UsageError("--max-degree must be non-negative");
    }
    return f;
}

std::optional<ResultCache> open_cache(const Common& c) {
    std::string dir = c.cache_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv("STRATA_RINGS_CACHE")) {
            dir = env;
        }
    }
    if (dir.empty()) {
        return std::nullopt;
    }
    return ResultCache(dir);
}

std::string join(const std::vector<std::uint64_t>& v) {
    std::string out;
    for (auto x : v) {
        out += (out.empty() ? "" : " ") + std::to_string(x);
    }
    return out;
}

// Betti vector for one method, going through the cache when configured.
struct Computed {
    CacheRecord record;
    bool clamped = false;
};

Computed compute(Family f, const Common& c, Method method) {
    auto started = std::chrono::steady_clock::now();
    int top = top_degree(f, c.ell);
    bool clamped = c.max_degree && *c.max_degree > top;
    std::optional<int> trunc;
    if (c.max_degree && *c.max_degree < top) {
        trunc = *c.max_degree;
    }
    auto cache = open_cache(c);
    std::optional<std::string> hash;
    if (method == Method::rank) {
        hash = presentation_hash(make_ideal(f, c.ell));
    }
    std::string status = "off";
    std::optional<CacheRecord> rec;
    if (cache) {
        rec = cache->get(f, c.ell, method, trunc, hash);
        status = rec ? "hit" : "miss";
    }
    if (!rec) {
        BettiVector b;
        if (method == Method::rank) {
            b = quotient_dims(f, c.ell, trunc);
        } else {
            b = f == Family::complex ? complex_betti(c.ell) : real_betti(c.ell);
            if (trunc) {
                b.dims.resize(static_cast<std::size_t>(*trunc) + 1);
                b.truncated_at = trunc;
            }
        }
        rec = CacheRecord::from(b, hash);
        if (cache) {
            if (auto err = cache->put(*rec); !err.empty()) {
                std::cerr << "warning: " << err << "; continuing without cache\n";
            }
        }
    }
    if (c.timing) {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        std::cerr << "timing: " << to_string(method) << " cache=" << status << " elapsed=" << secs << "s\n";
    }
    return {*rec, clamped};
}

int cmd_betti(const Common& c, const std::string& method_name) {
    Family f = checked_family(c);
    std::vector<Method> methods;
    if (method_name == "both") {
        methods = {Method::recursion, Method::rank};
    } else {
        methods = {parse_method(method_name)};
    }
    std::vector<Computed> results;
    for (Method m : methods) {
        results.push_back(compute(f, c, m));
    }
    if (results.front().clamped) {
        std::cerr << "warning: --max-degree clamped to top degree " << top_degree(f, c.ell) << "\n";
    }
    bool match = results.size() == 1 || results[0].record.dims == results[1].record.dims;
    if (c.json) {
        if (results.size() == 1) {
            std::cout << results[0].record.to_json().dump(2) << "\n";
        } else {
            json doc;
            doc["recursion"] = results[0].record.to_json();
            doc["rank"] = results[1].record.to_json();
            doc["match"] = match;
            std::cout << doc.dump(2) << "\n";
        }
    } else if (results.size() == 1) {
        std::cout << join(results[0].record.dims) << "\n";
    } else {
        std::cout << "recursion: " << join(results[0].record.dims) << "\n";
        std::cout << "rank: " << join(results[1].record.dims) << "\n";
        std::cout << (match ? "MATCH" : "MISMATCH") << "\n";
    }
    return match ? 0 : 1;
}

int cmd_presentation(const Common& c) {
    Family f = checked_family(c);
    IdealPresentation pres = make_ideal(f, c.ell);
    if (c.json) {
        json doc = to_json(pres);
        doc["presentation_hash"] = presentation_hash(pres);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << render_presentation(pres);
    }
    return 0;
}

struct Outcome {
    std::string verdict;  // PASS, FAIL or SKIP
    std::string detail;
};

bool palindromic(const std::vector<std::uint64_t>& v) {
    return std::equal(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.rbegin());
}

class Verifier {
public:
    Verifier(Family f, Common c) : f_(f), c_(std::move(c)) {}

    Outcome run(const std::string& name) {
        if (name == "duality") {
            auto d = rank_dims();
            return {palindromic(d) ? "PASS" : "FAIL", join(d)};
        }
        if (name == "euler") {
            if (f_ != Family::real) {
                return {"SKIP", "real family only"};
            }
            auto d = rank_dims();
            long long chi = 0;
            for (std::size_t p = 0; p < d.size(); ++p) {
                chi += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(d[p]);
            }
            return {chi == 0 ? "PASS" : "FAIL", "chi=" + std::to_string(chi)};
        }
        if (name == "recursion-match") {
            auto a = rank_dims();
            auto b = compute(f_, c_, Method::recursion).record.dims;
            return {a == b ? "PASS" : "FAIL", "rank " + join(a) + " / recursion " + join(b)};
        }
        if (name == "h1-closed-form") {
            if (f_ != Family::real) {
                return {"SKIP", "real family only"};
            }
            std::uint64_t want = real_h1_closed_form(c_.ell);
            std::uint64_t rec = real_betti(c_.ell).dims.at(1);
            std::string detail = "closed " + std::to_string(want) + ", recursion " + std::to_string(rec);
            bool ok = want == rec;
            if (c_.ell <= 4) {
                std::uint64_t rank = quotient_dims(f_, c_.ell, 1).dims.at(1);
                detail += ", rank " + std::to_string(rank);
                ok = ok && rank == want;
            }
            return {ok ? "PASS" : "FAIL", detail};
        }
        if (name == "torsion-relation") {
            if (f_ != Family::real) {
                return {"SKIP", "real family only"};
            }
            auto oracle = standard_oracle(Family::real, GroundSet::standard(c_.ell));
            int tested = 0;
            int failed = 0;
            for (int a = 1; a <= c_.ell; ++a) {
                for (int b = 1; b <= c_.ell; ++b) {
                    for (int cc = 1; cc <= c_.ell; ++cc) {
                        if (a == b || a == cc || b == cc) {
                            continue;
                        }
                        ++tested;
                        failed += oracle->contains(real_e2b2_element(c_.ell, a, b, cc)) ? 0 : 1;
                    }
                }
            }
            return {failed == 0 ? "PASS" : "FAIL",
                    std::to_string(tested - failed) + "/" + std::to_string(tested) + " triples in the ideal"};
        }
        if (name == "transfer-welldef") {
            auto t = verify_F_transport(f_, c_.ell);
            auto w = verify_phi_well_defined(f_, c_.ell, c_.max_degree);
            bool ok = t.passed() && w.passed();
            return {ok ? "PASS" : "FAIL", std::to_string(t.entries.size() + w.entries.size()) + " containments, " +
                                              std::to_string(t.failures() + w.failures()) + " failed" +
                                              (w.complete ? "" : ", incomplete")};
        }
        if (name == "transfer-surjective") {
            int top = top_degree(f_, c_.ell + 1);
            int last = c_.max_degree ? std::min(*c_.max_degree, top) : top;
            std::string failed;
            for (int d = 0; d <= last; ++d) {
                if (!verify_phi_surjective(f_, c_.ell, d)) {
                    failed += " " + std::to_string(d);
                }
            }
            return {failed.empty() ? "PASS" : "FAIL",
                    failed.empty() ? "degrees 0.." + std::to_string(last) : "fails in degree" + failed};
        }
        throw UsageError("unknown check '" + name + "'");
    }

private:
    const std::vector<std::uint64_t>& rank_dims() {
        if (!rank_) {
            rank_ = compute(f_, c_, Method::rank).record.dims;
        }
        return *rank_;
    }

    Family f_;
    Common c_;
    std::optional<std::vector<std::uint64_t>> rank_;
};

// Checks whose verdicts are stored; the rest reuse cached Betti vectors.
bool report_cached(const std::string& name) {
    return name == "torsion-relation" || name == "transfer-welldef" || name == "transfer-surjective";
}

Outcome cached_run(Verifier& v, Family f, const Common& c, const std::string& name) {
    auto cache = open_cache(c);
    if (!cache || !report_cached(name)) {
        return v.run(name);
    }
    auto started = std::chrono::steady_clock::now();
    std::string hash = presentation_hash(make_ideal(f, c.ell));
    if (name != "torsion-relation") {
        hash += "+" + presentation_hash(make_ideal(f, c.ell + 1));
    }
    std::string status = "hit";
    Outcome o;
    if (auto rec = cache->get_report(f, c.ell, name, c.max_degree, hash)) {
        o = {rec->verdict, rec->detail};
    } else {
        status = "miss";
        o = v.run(name);
        ReportRecord r;
        r.family = f;
        r.ell = c.ell;
        r.check = name;
        r.degree_bound = c.max_degree;
        r.verdict = o.verdict;
        r.detail = o.detail;
        r.presentation_hash = hash;
        if (auto err = cache->put_report(r); !err.empty()) {
            std::cerr << "warning: " << err << "; continuing without cache\n";
        }
    }
    if (c.timing) {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        std::cerr << "timing: verify " << name << " cache=" << status << " elapsed=" << secs << "s\n";
    }
    return o;
}

const std::vector<std::string> kChecks = {"duality",          "euler",           "recursion-match", "torsion-relation",
                                          "transfer-welldef", "transfer-surjective", "h1-closed-form"};

int cmd_verify(const Common& c, const std::string& checks) {
    Family f = checked_family(c);
    std::vector<std::string> names;
    std::stringstream ss(checks);
    for (std::string item; std::getline(ss, item, ',');) {
        if (std::find(kChecks.begin(), kChecks.end(), item) == kChecks.end()) {
            throw UsageError("unknown check '" + item + "'");
        }
        names.push_back(item);
    }
    if (names.empty()) {
        throw UsageError("--checks is empty");
    }
    Verifier v(f, c);
    bool all = true;
    json list = json::array();
    for (const auto& name : names) {
        Outcome o = cached_run(v, f, c, name);
        all = all && o.verdict != "FAIL";
        if (c.json) {
            list.push_back({{"check", name}, {"verdict", o.verdict}, {"detail", o.detail}});
        } else {
            std::cout << name << ": " << o.verdict << " (" << o.detail << ")\n";
        }
    }
    if (c.json) {
        json doc;
        doc["family"] = c.family;
        doc["ell"] = c.ell;
        doc["checks"] = list;
        std::cout << doc.dump(2) << "\n";
    }
    return all ? 0 : 1;
}

void add_common(CLI::App* cmd, Common& c, bool degree) {
    cmd->add_option("--family", c.family, "complex or real")->check(CLI::IsMember({"complex", "real"}));
    cmd->add_option("--ell", c.ell, "number of marks")->required();
    if (degree) {
        cmd->add_option("--max-degree", c.max_degree, "highest cohomological degree to compute");
    }
    cmd->add_flag("--json", c.json, "machine-readable output");
    cmd->add_option("--cache-dir", c.cache_dir, "result cache directory (default: $STRATA_RINGS_CACHE)");
    cmd->add_flag("--timing", c.timing, "report cache use and elapsed time on stderr");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cohomology rings of real and complex moduli spaces of marked rational curves"};
    app.require_subcommand(1);
    Common common;
    std::string method = "recursion";
    std::string checks;

    auto* betti = app.add_subcommand("betti", "Betti numbers by recursion, rank, or both");
    add_common(betti, common, true);
    betti->add_option("--method", method, "recursion, rank or both")
        ->check(CLI::IsMember({"recursion", "rank", "both"}));

    auto* pres = app.add_subcommand("presentation", "Generators and relations of the ring");
    add_common(pres, common, false);

    auto* verify = app.add_subcommand("verify", "Run named verification suites");
    add_common(verify, common, true);
    verify->add_option("--checks", checks, "comma-separated check names")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*betti) {
            return cmd_betti(common, method);
        }
        if (*pres) {
            return cmd_presentation(common);
        }
        return cmd_verify(common, checks);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
