#include "entroflux/scenario.hpp"

#include "entroflux/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

namespace entroflux::sweep {

namespace {

constexpr std::array<std::pair<Output, std::string_view>, 10> kOutputNames{{
    {Output::pi_s, "pi_s"},
    {Output::mu_a, "mu_a"},
    {Output::mu_c, "mu_c"},
    {Output::mutual_info, "mutual_info"},
    {Output::log_neg, "log_neg"},
    {Output::nu_minus, "nu_minus"},
    {Output::n_a_s, "n_a_s"},
    {Output::n_c_s, "n_c_s"},
    {Output::stable, "stable"},
    {Output::physical, "physical"},
}};

const std::set<std::string, std::less<>> kCommonKeys{"kind", "sweep", "outputs", "tau", "theta", "n_a", "n_c",
                                                     "kappa_a", "kappa_fb"};
const std::set<std::string, std::less<>> kGenericKeys{"omega_a", "kappa_c", "g"};
const std::set<std::string, std::less<>> kOptoKeys{"gamma_m", "delta_0", "g0", "drive", "power",
                                                   "laser_freq", "g", "branch", "drive_xi"};
const std::set<std::string, std::less<>> kGenericSweep{"omega_a", "n_a", "n_c", "tau", "theta", "g"};
const std::set<std::string, std::less<>> kOptoSweep{"delta_0", "n_a", "n_c", "tau", "theta", "g"};

// At fixed reflectivity the quoted cavity loss is held as the effective loss
// kappa_fb; the tau sweep (fig4) and fig3 keep the bare kappa_a.
const std::vector<std::pair<std::string, std::string>> kPresets{
    {"fig1",
     "# Pi_s, mu_a, mu_c against omega_a / omega_c; G = 0.1, equal losses, ground-state baths\n"
     "kind = generic\n"
     "kappa_fb = 0.2\n"
     "kappa_c = 0.2\n"
     "g = 0.05\n"
     "tau = 0.9\n"
     "theta = pi\n"
     "n_a = 0\n"
     "n_c = 0\n"
     "sweep = omega_a 0 5 0.01\n"},
    {"fig2",
     "# Pi_s, mu_a, mu_c against omega_a / omega_c at weak coupling G = 0.01, N_c = 10\n"
     "kind = generic\n"
     "kappa_fb = 0.2\n"
     "kappa_c = 0.2\n"
     "g = 0.005\n"
     "tau = 0.9\n"
     "theta = pi\n"
     "n_a = 0\n"
     "n_c = 10\n"
     "sweep = omega_a 0 5 0.01\n"},
    {"fig3",
     "# Pi_s against N_a / N_c with N_c = 100 fixed (grid step 0.01 in the ratio)\n"
     "kind = generic\n"
     "omega_a = 1\n"
     "kappa_a = 0.2\n"
     "kappa_c = 0.5\n"
     "g = 0.025\n"
     "tau = 0.1\n"
     "theta = pi\n"
     "n_c = 100\n"
     "sweep = n_a 0 200 1\n"},
    {"fig4",
     "# Pi_s, mu_a, mu_c against the reflectivity tau\n"
     "kind = generic\n"
     "omega_a = 1\n"
     "kappa_a = 0.2\n"
     "kappa_c = 0.2\n"
     "g = 0.05\n"
     "theta = pi\n"
     "n_a = 0\n"
     "n_c = 0\n"
     "sweep = tau 0 0.95 0.01\n"},
    {"fig5",
     "# Pi_s, mutual information and log-negativity against omega_a / omega_c\n"
     "kind = generic\n"
     "kappa_fb = 0.2\n"
     "kappa_c = 0.2\n"
     "g = 0.05\n"
     "tau = 0.85\n"
     "theta = pi\n"
     "n_a = 0\n"
     "n_c = 0\n"
     "sweep = omega_a 0 5 0.01\n"
     "outputs = pi_s mu_a mu_c mutual_info log_neg nu_minus stable physical\n"},
    {"fig6",
     "# optical and mechanical contributions against the detuning Delta / omega_m\n"
     "kind = optomech\n"
     "kappa_fb = 0.2\n"
     "gamma_m = 0.001\n"
     "g = 0.005\n"
     "tau = 0.9\n"
     "theta = pi\n"
     "n_a = 0\n"
     "n_c = 1000\n"
     "sweep = delta_0 -2 2 0.01\n"},
    {"fig7",
     "# Pi_s, mutual information and entanglement against Delta / omega_m\n"
     "kind = optomech\n"
     "kappa_fb = 0.5\n"
     "gamma_m = 0.01\n"
     "g = 0.05\n"
     "tau = 0.9\n"
     "theta = pi\n"
     "n_a = 0\n"
     "n_c = 10\n"
     "sweep = delta_0 -2 2 0.01\n"
     "outputs = pi_s mu_a mu_c mutual_info log_neg nu_minus stable physical\n"},
};

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != ',') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<double> plain_number(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

// Accepts a decimal number, `pi`, `<num>*pi` or `pi/<num>`.
std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (s == "pi") return std::numbers::pi;
    if (s.size() > 3 && s.ends_with("*pi")) {
        if (auto k = plain_number(s.substr(0, s.size() - 3))) return *k * std::numbers::pi;
        return std::nullopt;
    }
    if (s.size() > 3 && s.starts_with("pi/")) {
        if (auto k = plain_number(s.substr(3)); k && *k != 0.0) return std::numbers::pi / *k;
        return std::nullopt;
    }
    return plain_number(s);
}

struct Entry {
    std::string value;
    std::size_t line;
};

class Reader {
public:
    explicit Reader(std::map<std::string, Entry, std::less<>> entries) : entries_(std::move(entries)) {}

    bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }
    std::size_t line(std::string_view key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }
    const std::string& raw(std::string_view key) const { return entries_.find(key)->second.value; }

    double number(std::string_view key, double fallback) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        auto v = parse_number(it->second.value);
        if (!v) fail(key, "expected a number, got '" + it->second.value + "'");
        return *v;
    }

    [[noreturn]] void fail(std::string_view key, const std::string& what) const {
        throw ConfigError(line(key), std::string(key), what);
    }

private:
    std::map<std::string, Entry, std::less<>> entries_;
};

void check_range(const Reader& r, std::string_view key, double v, double lo, double hi, bool hi_open,
                 const std::string& label) {
    const bool ok = v >= lo && (hi_open ? v < hi : v <= hi);
    if (!ok) r.fail(key, label + " = " + std::to_string(v) + " out of range");
}

void check_common_ranges(const Reader& r, std::string_view key, const std::string& var, double v) {
    if (var == "tau") check_range(r, key, v, 0.0, 1.0, true, "reflectivity tau");
    if (var == "theta") check_range(r, key, v, 0.0, 2.0 * std::numbers::pi, true, "phase theta");
    if (var == "n_a" || var == "n_c") check_range(r, key, v, 0.0, INFINITY, false, var);
    if (var == "g") check_range(r, key, v, 0.0, INFINITY, false, "coupling g");
}

double feedback_factor(double tau, double theta) { return 1.0 - 2.0 * tau * std::cos(theta); }

}  // namespace

std::string_view output_name(Output o) {
    for (const auto& [k, v] : kOutputNames)
        if (k == o) return v;
    return "?";
}

std::optional<Output> parse_output(std::string_view name) {
    for (const auto& [k, v] : kOutputNames)
        if (v == name) return k;
    return std::nullopt;
}

const std::vector<Output>& all_outputs() {
    static const std::vector<Output> all = [] {
        std::vector<Output> v;
        for (const auto& [k, _] : kOutputNames) v.push_back(k);
        return v;
    }();
    return all;
}

bool is_flag(Output o) { return o == Output::stable || o == Output::physical; }

std::size_t SweepAxis::size() const {
    if (!(step > 0.0) || !(stop > start)) return 0;
    return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
}

double SweepAxis::at(std::size_t i) const { return start + static_cast<double>(i) * step; }

Scenario parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(line_no, "", "empty key");
        if (value.empty()) throw ConfigError(line_no, key, "empty value");
        if (!kCommonKeys.contains(key) && !kGenericKeys.contains(key) && !kOptoKeys.contains(key)) {
            throw ConfigError(line_no, key, "unknown key");
        }
        if (!entries.emplace(key, Entry{value, line_no}).second) throw ConfigError(line_no, key, "duplicate key");
    }

    Reader r(std::move(entries));
    Scenario s;

    if (r.has("kind")) {
        const auto& k = r.raw("kind");
        if (k == "generic")
            s.kind = Kind::generic;
        else if (k == "optomech")
            s.kind = Kind::optomech;
        else
            r.fail("kind", "expected 'generic' or 'optomech'");
    }
    const bool opto = s.kind == Kind::optomech;
    const auto& kind_keys = opto ? kOptoKeys : kGenericKeys;
    const auto& other_keys = opto ? kGenericKeys : kOptoKeys;
    for (const auto& key : other_keys) {
        if (r.has(key) && !kind_keys.contains(key)) {
            r.fail(key, std::string("not valid for kind = ") + (opto ? "optomech" : "generic"));
        }
    }

    // sweep axis
    if (!r.has("sweep")) throw ConfigError(0, "sweep", "missing required key");
    {
        const auto words = split_words(r.raw("sweep"));
        if (words.size() != 4) r.fail("sweep", "expected '<variable> <start> <stop> <step>'");
        s.sweep.variable = std::string(words[0]);
        const auto& allowed = opto ? kOptoSweep : kGenericSweep;
        if (!allowed.contains(s.sweep.variable)) r.fail("sweep", "variable '" + s.sweep.variable + "' is not sweepable");
        const auto start = parse_number(words[1]);
        const auto stop = parse_number(words[2]);
        const auto step = parse_number(words[3]);
        if (!start || !stop || !step) r.fail("sweep", "malformed number");
        s.sweep.start = *start;
        s.sweep.stop = *stop;
        s.sweep.step = *step;
        if (!(s.sweep.step > 0.0)) r.fail("sweep", "step must be positive");
        if (!(s.sweep.start < s.sweep.stop)) r.fail("sweep", "start must be below stop");
        check_common_ranges(r, "sweep", s.sweep.variable, s.sweep.at(0));
        check_common_ranges(r, "sweep", s.sweep.variable, s.sweep.at(s.sweep.size() - 1));
        if (opto && s.sweep.variable == "g" && !r.has("g")) {
            r.fail("sweep", "sweeping g needs the direct light-enhanced coupling 'g'");
        }
    }

    // outputs
    if (r.has("outputs")) {
        for (auto w : split_words(r.raw("outputs"))) {
            auto o = parse_output(w);
            if (!o) r.fail("outputs", "unknown output '" + std::string(w) + "'");
            if (std::find(s.outputs.begin(), s.outputs.end(), *o) != s.outputs.end()) {
                r.fail("outputs", "output '" + std::string(w) + "' listed twice");
            }
            s.outputs.push_back(*o);
        }
        if (s.outputs.empty()) r.fail("outputs", "no outputs requested");
    } else {
        s.outputs = all_outputs();
    }

    const double tau = r.number("tau", 0.0);
    const double theta = r.number("theta", std::numbers::pi);
    const double n_a = r.number("n_a", 0.0);
    const double n_c = r.number("n_c", 0.0);
    check_common_ranges(r, "tau", "tau", tau);
    check_common_ranges(r, "theta", "theta", theta);
    check_common_ranges(r, "n_a", "n_a", n_a);
    check_common_ranges(r, "n_c", "n_c", n_c);

    double kappa_a = r.number("kappa_a", 0.2);
    if (r.has("kappa_fb")) {
        if (r.has("kappa_a")) r.fail("kappa_fb", "give either kappa_a or kappa_fb, not both");
        s.kappa_fb = r.number("kappa_fb", 0.0);
        if (!(*s.kappa_fb > 0.0)) r.fail("kappa_fb", "effective loss must be positive");
        const double factor = feedback_factor(tau, theta);
        if (!(factor > 0.0)) r.fail("kappa_fb", "tau/theta give a non-positive feedback factor");
        kappa_a = *s.kappa_fb / factor;
    }
    if (!(kappa_a > 0.0)) r.fail("kappa_a", "kappa_a must be positive");

    if (!opto) {
        auto& p = s.generic;
        p.omega_a = r.number("omega_a", 1.0);
        p.omega_c = 1.0;
        p.kappa_a = kappa_a;
        p.kappa_c = r.number("kappa_c", 0.2);
        p.g = r.number("g", 0.0);
        p.tau = tau;
        p.theta = theta;
        p.n_a = n_a;
        p.n_c = n_c;
        if (!(p.kappa_c > 0.0)) r.fail("kappa_c", "kappa_c must be positive");
        check_common_ranges(r, "g", "g", p.g);
    } else {
        auto& o = s.opto;
        o.omega_m = 1.0;
        o.gamma_m = r.number("gamma_m", 1e-3);
        o.kappa_a = kappa_a;
        o.delta_0 = r.number("delta_0", 1.0);
        o.g0 = r.number("g0", 0.0);
        o.drive = r.number("drive", 0.0);
        o.tau = tau;
        o.theta = theta;
        o.n_a = n_a;
        o.n_c = n_c;
        if (!(o.gamma_m > 0.0)) r.fail("gamma_m", "gamma_m must be positive");
        if (o.g0 < 0.0) r.fail("g0", "g0 must be non-negative");
        if (o.drive < 0.0) r.fail("drive", "drive amplitude must be non-negative");
        if (r.has("power") || r.has("laser_freq")) {
            if (r.has("drive")) r.fail("power", "give either drive or power/laser_freq");
            if (!r.has("power") || !r.has("laser_freq")) r.fail("power", "power and laser_freq go together");
            optomech::PowerDrive pd{r.number("power", 0.0), r.number("laser_freq", 1.0)};
            if (pd.power < 0.0) r.fail("power", "power must be non-negative");
            if (!(pd.laser_freq > 0.0)) r.fail("laser_freq", "laser_freq must be positive");
            o.power = pd;
        }
        if (r.has("drive_xi")) {
            const auto& v = r.raw("drive_xi");
            if (v == "true")
                o.drive_through_splitter = true;
            else if (v == "false")
                o.drive_through_splitter = false;
            else
                r.fail("drive_xi", "expected true or false");
        }
        if (r.has("g")) {
            if (r.has("g0") || r.has("drive") || r.has("power")) {
                r.fail("g", "direct coupling g excludes g0/drive/power");
            }
            s.g_enhanced = r.number("g", 0.0);
            check_common_ranges(r, "g", "g", *s.g_enhanced);
        }
        if (r.has("branch")) {
            const double b = r.number("branch", 0.0);
            if (b < 0.0 || b > 2.0 || b != std::floor(b)) r.fail("branch", "branch must be 0, 1 or 2");
            s.branch = static_cast<std::size_t>(b);
        }
    }
    return s;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, _] : kPresets) v.push_back(name);
        return v;
    }();
    return names;
}

std::optional<std::string> preset_config(std::string_view name) {
    for (const auto& [n, text] : kPresets)
        if (n == name) return text;
    return std::nullopt;
}

Scenario load_scenario(const std::string& preset_or_path) {
    if (auto text = preset_config(preset_or_path)) return parse_config(*text);
    std::ifstream in(preset_or_path);
    if (!in) throw IoError("cannot open config '" + preset_or_path + "' (and no preset of that name)");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace entroflux::sweep
