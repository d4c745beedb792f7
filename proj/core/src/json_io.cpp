#include "cmunits/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace cmunits {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr size_t kComplexDigits = 40;

ordered_json quadint_json(const QuadInt& x) {
    return {{"a", x.a().get_str()}, {"b", x.b().get_str()}, {"d", x.field().d}};
}

ordered_json complex_json(const Complex& z) {
    return {{"re", z.re.str(kComplexDigits)}, {"im", z.im.str(kComplexDigits)}};
}

ordered_json power_test_json(const PowerTestReport& t) {
    ordered_json recs = ordered_json::array();
    for (const auto& w : t.records)
        recs.push_back({{"q", w.q},
                        {"omega_root", w.omega_root},
                        {"unit_root", w.unit_root},
                        {"zeta", w.zeta},
                        {"witness", w.witness}});
    return {{"verdict", to_string(t.verdict)},
            {"primes_used", t.primes_used},
            {"note", t.note},
            {"records", std::move(recs)}};
}

ordered_json unit_json(const AlgebraicUnit& u) {
    ordered_json mp = ordered_json::array();
    for (const auto& c : u.minpoly) mp.push_back(quadint_json(c));
    ordered_json conj = ordered_json::array();
    for (const auto& z : u.conjugates) conj.push_back(complex_json(z));
    return {{"bits", u.bits},
            {"rounding_residual", u.rounding_residual.str(6)},
            {"minpoly", std::move(mp)},
            {"conjugates", std::move(conj)}};
}

}  // namespace

std::string scan_report_json(const ScanReport& r) {
    ordered_json recs = ordered_json::array();
    for (const auto& rec : r.records)
        recs.push_back({{"p", rec.p},
                        {"pi", quadint_json(rec.pi)},
                        {"purely_local_pi_bar", rec.purely_local_pi_bar},
                        {"purely_local_pi", rec.purely_local_pi},
                        {"frobenius_generates", rec.frobenius_generates}});
    ordered_json j{{"schema", kSchemaVersion},
                   {"report", "scan"},
                   {"version", r.version},
                   {"d", r.d},
                   {"max_p", r.max_p},
                   {"threads", r.threads},
                   {"timing_ms", r.timing_ms},
                   {"pi_convention", r.pi_convention},
                   {"records", std::move(recs)},
                   {"counter_examples", r.counter_examples}};
    return j.dump(2) + "\n";
}

std::string scan_report_csv(const ScanReport& r) {
    std::string out = "p,pi_a,pi_b,purely_local_pi_bar,purely_local_pi,frobenius_generates\n";
    for (const auto& rec : r.records) {
        out += std::to_string(rec.p) + ',' + rec.pi.a().get_str() + ',' + rec.pi.b().get_str() +
               ',' + (rec.purely_local_pi_bar ? '1' : '0') + ',' +
               (rec.purely_local_pi ? '1' : '0') + ',' + (rec.frobenius_generates ? '1' : '0') +
               '\n';
    }
    return out;
}

std::string identity_reports_json(const std::vector<IdentityReport>& reports, long bits) {
    ordered_json arr = ordered_json::array();
    long failures = 0;
    for (const auto& rep : reports) {
        if (!rep.pass) ++failures;
        arr.push_back({{"name", rep.name},
                       {"parameters", rep.parameters},
                       {"residual", rep.residual.str(6)},
                       {"pass", rep.pass}});
    }
    ordered_json j{{"schema", kSchemaVersion},
                   {"report", "verify"},
                   {"bits", bits},
                   {"total", reports.size()},
                   {"failures", failures},
                   {"reports", std::move(arr)}};
    return j.dump(2) + "\n";
}

std::string verdict_json(const SurjectivityVerdict& v) {
    ordered_json j{{"schema", kSchemaVersion},
                   {"report", "soule"},
                   {"d", v.d},
                   {"p", v.p},
                   {"m", {v.m.first, v.m.second}},
                   {"verdict", to_string(v.verdict)},
                   {"evidence", v.evidence}};
    if (v.frobenius_generates) j["frobenius_generates"] = *v.frobenius_generates;
    if (v.power_test) j["power_test"] = power_test_json(*v.power_test);
    if (v.unit) j["unit"] = unit_json(*v.unit);
    return j.dump(2) + "\n";
}

VerdictConfig load_verdict_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    ordered_json j = ordered_json::parse(in);
    VerdictConfig cfg;
    auto pick = [&](const char* key, std::optional<bool>& slot) {
        if (j.contains(key)) slot = j.at(key).get<bool>();
    };
    pick("h_mod_p_coprime", cfg.h_mod_p_coprime);
    pick("h_mod_pi_coprime", cfg.h_mod_pi_coprime);
    pick("h_mod_pibar_coprime", cfg.h_mod_pibar_coprime);
    pick("unique_prime_above_pi", cfg.unique_prime_above_pi);
    return cfg;
}

void write_text_file(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out.flush()) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace cmunits
