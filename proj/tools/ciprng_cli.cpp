// Command-line front end for the CI(xorshift, xorshift) generator library:
// stream generation, the five-test battery, throughput comparison, key
// sensitivity sweeps and watermark embed/extract.
//
// Exit codes: 0 success, 1 usage error, 2 data/format error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ciprng/ciprng.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_data = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint32_t parse_u32(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        const unsigned long v = std::stoul(text, &pos);
        if (pos != text.size() || v > 0xFFFFFFFFul)
            throw usage_error(std::string(what) + ": not a 32-bit unsigned value");
        return static_cast<std::uint32_t>(v);
    } catch (const usage_error&) {
        throw;
    } catch (const std::exception&) {
        throw usage_error(std::string(what) + ": not a 32-bit unsigned value");
    }
}

std::vector<int> parse_int_csv(const std::string& text, const char* what) {
    std::vector<int> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw usage_error(std::string(what) + ": malformed integer list");
        }
    }
    if (out.empty())
        throw usage_error(std::string(what) + ": empty list");
    return out;
}

std::vector<std::size_t> parse_length_csv(const std::string& text) {
    std::vector<std::size_t> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            const double v = std::stod(item); // accepts 2e5 style
            if (v < 1 || v > 1e12)
                throw usage_error("--lengths: value out of range");
            out.push_back(static_cast<std::size_t>(v));
        } catch (const usage_error&) {
            throw;
        } catch (const std::exception&) {
            throw usage_error("--lengths: malformed list");
        }
    }
    if (out.empty())
        throw usage_error("--lengths: empty list");
    return out;
}

// time-based seeding: whole seconds for the xorshift seeds, the
// microsecond part for x^0 (printed for replay)
struct time_seed {
    std::uint32_t seconds;
    std::uint32_t micros;
};

time_seed now_seed() {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now);
    const auto micros =
        std::chrono::duration_cast<std::chrono::microseconds>(now - secs);
    std::uint32_t s = static_cast<std::uint32_t>(secs.count());
    if (s == 0) s = 1;
    return {s, static_cast<std::uint32_t>(micros.count())};
}

std::uint64_t parse_x0(const std::string& text, int n_cells) {
    if (text == "time") {
        const auto t = now_seed();
        const std::uint64_t x0 =
            n_cells >= 64 ? t.micros : (t.micros & ((std::uint64_t{1} << n_cells) - 1));
        std::cerr << "x0 (time-based): " << x0 << "\n";
        return x0;
    }
    const bool bit_string = text.size() == static_cast<std::size_t>(n_cells)
                            && text.find_first_not_of("01") == std::string::npos;
    try {
        if (bit_string)
            return ciprng::bit_state::from_string(text).value();
        const std::uint64_t v = std::stoull(text);
        if (n_cells < 64 && (v >> n_cells) != 0)
            throw usage_error("--x0: value does not fit in N bits");
        return v;
    } catch (const usage_error&) {
        throw;
    } catch (const std::exception&) {
        throw usage_error("--x0: expected an N-bit string or an unsigned integer");
    }
}

std::uint32_t parse_seed(const std::string& text, const char* what, bool* was_time) {
    if (text == "time") {
        const auto t = now_seed();
        if (was_time) *was_time = true;
        std::cerr << what << " (time-based): " << t.seconds << "\n";
        return t.seconds;
    }
    const std::uint32_t v = parse_u32(text, what);
    if (v == 0)
        throw usage_error(std::string(what) + ": zero state");
    return v;
}

// --- generator construction shared by gen and test ---

struct gen_options {
    std::string generator;
    int n = 32;
    std::string x0_text;
    std::string seed_text;   // xorshift
    std::string seed_m_text;
    std::string seed_b_text;
    double lseed1 = 0.0;
    double lseed2 = 0.0;
    double r = ciprng::logistic_map::default_r;
    int c = 0;
    std::string inject_m;
    std::string inject_b;
    std::uint64_t bits = 0;
    std::uint64_t count = 0;
    std::string format = "bits-ascii";
    std::string out_path;
    std::vector<std::string> export_args; // {format, path}
};

ciprng::ci_generator make_new_ci(const gen_options& g) {
    if (g.n < 2 || g.n > 64)
        throw usage_error("--n: must be in [2,64]");
    const std::uint64_t x0 =
        g.x0_text.empty() ? parse_x0("time", g.n) : parse_x0(g.x0_text, g.n);
    const std::uint32_t sm = parse_seed(
        g.seed_m_text.empty() ? "time" : g.seed_m_text, "--seed-m", nullptr);
    const std::uint32_t sb = parse_seed(
        g.seed_b_text.empty() ? "time" : g.seed_b_text, "--seed-b", nullptr);
    return ciprng::seed_ci_generator(ciprng::bit_state(x0, g.n), sm, sb);
}

ciprng::old_ci_generator make_old_ci(const gen_options& g) {
    if (g.n < 2 || g.n > 64)
        throw usage_error("--n: must be in [2,64]");
    const int c = g.c > 0 ? g.c : 3 * g.n;
    if (c < 3 * g.n)
        throw usage_error("--c: must be at least 3N");
    const std::uint64_t x0 =
        g.x0_text.empty() ? parse_x0("time", g.n) : parse_x0(g.x0_text, g.n);
    const double l1 = g.lseed1 > 0.0 ? g.lseed1 : 0.112358;
    const double l2 = g.lseed2 > 0.0 ? g.lseed2 : 0.271828;
    if (ciprng::logistic_seed_degenerate(l1) || ciprng::logistic_seed_degenerate(l2))
        throw usage_error("--lseed: seed must lie in (0,1) and avoid 0.5, 0.75");
    return ciprng::old_ci_generator(ciprng::bit_state(x0, g.n),
                                    ciprng::logistic_map(l1, g.r),
                                    ciprng::logistic_map(l2, g.r), c);
}

ciprng::xorshift32 make_xorshift(const gen_options& g) {
    return ciprng::xorshift32(
        parse_seed(g.seed_text.empty() ? "time" : g.seed_text, "--seed", nullptr));
}

ciprng::logistic_map make_logistic(const gen_options& g) {
    const double l1 = g.lseed1 > 0.0 ? g.lseed1 : 0.112358;
    if (ciprng::logistic_seed_degenerate(l1))
        throw usage_error("--lseed1: seed must lie in (0,1) and avoid 0.5, 0.75");
    return ciprng::logistic_map(l1, g.r);
}

// --- gen ---

void write_output(const gen_options& opt, const ciprng::bit_sequence& bits,
                  const std::vector<std::uint64_t>& integers) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!opt.out_path.empty()) {
        file.open(opt.out_path, std::ios::binary);
        if (!file)
            throw data_error("cannot write " + opt.out_path);
        os = &file;
    }
    if (opt.format == "bits-ascii") {
        *os << ciprng::to_ascii(bits) << '\n';
    } else if (opt.format == "bits-raw") {
        const auto bytes = ciprng::pack_msb(bits);
        os->write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    } else { // integers-csv
        for (std::size_t i = 0; i < integers.size(); ++i)
            *os << integers[i] << (i + 1 < integers.size() ? "," : "");
        *os << '\n';
    }
    if (!opt.export_args.empty()) {
        if (opt.export_args[0] != "nist")
            throw usage_error("--export: unknown format (expected nist)");
        std::ofstream nist(opt.export_args[1], std::ios::binary);
        if (!nist)
            throw data_error("cannot write " + opt.export_args[1]);
        nist << ciprng::to_ascii(bits);
    }
}

// collects both framings at once; integer outputs are only kept when the
// generator has a state framing
template <class Gen>
void collect_states(Gen& gen, std::uint64_t count, ciprng::bit_sequence& bits,
                    std::vector<std::uint64_t>& integers) {
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t w = gen.next_block();
        integers.push_back(w);
        ciprng::append_word_msb(bits, w, gen.block_bits());
    }
}

int cmd_gen(const gen_options& opt_in) {
    gen_options opt = opt_in;
    const bool injected = !opt.inject_m.empty() || !opt.inject_b.empty();
    const bool want_integers = opt.format == "integers-csv";

    ciprng::bit_sequence bits;
    std::vector<std::uint64_t> integers;

    const auto block_count = [&](int block_bits) -> std::uint64_t {
        if (opt.count > 0) return opt.count;
        if (opt.bits == 0)
            throw usage_error("need --bits or --count");
        return (opt.bits + static_cast<std::uint64_t>(block_bits) - 1)
               / static_cast<std::uint64_t>(block_bits);
    };

    if (opt.generator == "new-ci" && injected) {
        if (opt.n < 2 || opt.n > 64)
            throw usage_error("--n: must be in [2,64]");
        if (opt.inject_m.empty() || opt.inject_b.empty())
            throw usage_error("--inject-m and --inject-b must be given together");
        const std::uint64_t x0 =
            opt.x0_text.empty() ? parse_x0("time", opt.n) : parse_x0(opt.x0_text, opt.n);
        auto gen = ciprng::make_injected_ci_generator(
            ciprng::bit_state(x0, opt.n), parse_int_csv(opt.inject_m, "--inject-m"),
            parse_int_csv(opt.inject_b, "--inject-b"));
        std::uint64_t count = opt.count;
        if (count == 0 && opt.bits > 0)
            count = (opt.bits + static_cast<std::uint64_t>(opt.n) - 1)
                    / static_cast<std::uint64_t>(opt.n);
        if (count == 0) count = gen.m_source().remaining();
        collect_states(gen, count, bits, integers);
    } else if (opt.generator == "new-ci") {
        auto gen = make_new_ci(opt);
        collect_states(gen, block_count(opt.n), bits, integers);
        if (opt.bits > 0) bits.resize(opt.bits);
    } else if (opt.generator == "old-ci") {
        auto gen = make_old_ci(opt);
        collect_states(gen, block_count(opt.n), bits, integers);
        if (opt.bits > 0) bits.resize(opt.bits);
    } else if (opt.generator == "xorshift") {
        auto gen = make_xorshift(opt);
        collect_states(gen, block_count(32), bits, integers);
        if (opt.bits > 0) bits.resize(opt.bits);
    } else if (opt.generator == "logistic") {
        if (want_integers)
            throw usage_error("integers-csv is not defined for the logistic generator");
        auto gen = make_logistic(opt);
        if (opt.bits == 0)
            throw usage_error("need --bits");
        ciprng::append_bits(gen, bits, opt.bits);
    } else {
        throw usage_error("--gen: unknown generator");
    }

    write_output(opt, bits, integers);
    return exit_ok;
}

// --- test ---

struct test_options {
    std::string input_path;
    gen_options gen;
    bool have_gen = false;
    double alpha = 0.01;
    int poker_m = 0;
    std::size_t autocorr_d = 8;
    bool csv = false;
    std::vector<std::string> export_args;
};

ciprng::bit_sequence load_bit_file(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign((std::istreambuf_iterator<char>(std::cin)),
                    std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw data_error("cannot open " + path);
        text.assign((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
    }
    try {
        return ciprng::from_ascii(text);
    } catch (const std::exception& e) {
        throw data_error(path + ": " + e.what());
    }
}

int cmd_test(const test_options& opt) {
    ciprng::bit_sequence bits;
    if (!opt.input_path.empty()) {
        bits = load_bit_file(opt.input_path);
    } else if (opt.have_gen) {
        gen_options g = opt.gen;
        if (g.bits == 0) g.bits = 200000;
        if (g.generator == "new-ci") {
            auto gen = make_new_ci(g);
            ciprng::append_bits(gen, bits, g.bits);
        } else if (g.generator == "old-ci") {
            auto gen = make_old_ci(g);
            ciprng::append_bits(gen, bits, g.bits);
        } else if (g.generator == "xorshift") {
            auto gen = make_xorshift(g);
            ciprng::append_bits(gen, bits, g.bits);
        } else if (g.generator == "logistic") {
            auto gen = make_logistic(g);
            ciprng::append_bits(gen, bits, g.bits);
        } else {
            throw usage_error("--gen: unknown generator");
        }
    } else {
        throw usage_error("need --input or --gen");
    }

    if (bits.size() < 10000)
        throw data_error("undersized input: need at least 10^4 bits");

    ciprng::battery_params params;
    params.alpha = opt.alpha;
    params.poker_m = opt.poker_m;
    params.autocorr_d = opt.autocorr_d;
    const auto reports = ciprng::run_battery(bits, params);

    if (opt.csv) {
        std::cout << "test,statistic,dof,p_value,pass\n";
        for (const auto& r : reports)
            std::cout << r.name << ',' << r.statistic << ','
                      << (r.dof > 0 ? std::to_string(r.dof) : std::string("normal"))
                      << ',' << r.p_value << ',' << (r.pass ? "pass" : "fail") << '\n';
    } else {
        ciprng::write_reports_table(std::cout, reports);
    }

    if (!opt.export_args.empty()) {
        if (opt.export_args[0] != "nist")
            throw usage_error("--export: unknown format (expected nist)");
        std::ofstream nist(opt.export_args[1], std::ios::binary);
        if (!nist)
            throw data_error("cannot write " + opt.export_args[1]);
        nist << ciprng::to_ascii(bits);
    }
    return exit_ok;
}

// --- bench ---

struct bench_options {
    std::string lengths = "200000";
    std::string gens = "logistic,xorshift,old-ci,new-ci";
    int n = 32;
    int c = 0;
    int runs = 5;
    bool table = false;
};

std::vector<ciprng::generator_spec> bench_specs(const bench_options& opt) {
    const int n = opt.n;
    const int c = opt.c > 0 ? opt.c : 3 * n;
    std::vector<ciprng::generator_spec> all = {
        {"logistic",
         [](ciprng::bit_sequence& out, std::size_t count) {
             ciprng::logistic_map gen(0.112358);
             out.clear();
             ciprng::append_bits(gen, out, count);
         }},
        {"xorshift",
         [](ciprng::bit_sequence& out, std::size_t count) {
             ciprng::xorshift32 gen(0x2545F491u);
             out.clear();
             ciprng::append_bits(gen, out, count);
         }},
        {"old-ci",
         [n, c](ciprng::bit_sequence& out, std::size_t count) {
             ciprng::old_ci_generator gen(ciprng::bit_state(1u, n),
                                          ciprng::logistic_map(0.112358),
                                          ciprng::logistic_map(0.271828), c);
             out.clear();
             ciprng::append_bits(gen, out, count);
         }},
        {"new-ci",
         [n](ciprng::bit_sequence& out, std::size_t count) {
             auto gen = ciprng::seed_ci_generator(ciprng::bit_state(1u, n),
                                                  0x2545F491u, 0x9E3779B9u);
             out.clear();
             ciprng::append_bits(gen, out, count);
         }},
    };

    std::vector<ciprng::generator_spec> selected;
    std::istringstream is(opt.gens);
    std::string name;
    while (std::getline(is, name, ',')) {
        bool found = false;
        for (const auto& spec : all)
            if (spec.name == name) {
                selected.push_back(spec);
                found = true;
            }
        if (!found)
            throw usage_error("--gens: unknown generator " + name);
    }
    if (selected.empty())
        throw usage_error("--gens: empty selection");
    return selected;
}

int cmd_bench(const bench_options& opt) {
    const auto lengths = parse_length_csv(opt.lengths);
    const auto specs = bench_specs(opt);

    if (!opt.table)
        std::cout << "method,length,monobit,serial,poker,runs,autocorrelation,time_s\n";
    for (const auto length : lengths) {
        const auto rows = ciprng::compare_generators(specs, length, {}, opt.runs);
        if (opt.table) {
            std::cout << "-- " << length << " bits --\n";
            ciprng::write_comparison_table(std::cout, rows);
        } else {
            for (const auto& r : rows) {
                std::ostringstream line;
                line << r.name << ',' << length << ',' << std::setprecision(10)
                     << r.monobit << ',' << r.serial << ',' << r.poker << ','
                     << r.runs << ',' << r.autocorrelation << ',' << r.time_s;
                std::cout << line.str() << '\n';
            }
        }
    }
    return exit_ok;
}

// --- sensitivity ---

struct sensitivity_options {
    int n = 32;
    std::string x0_text = "1";
    std::string seed_m_text = "3735928559";
    std::string seed_b_text = "464386559";
    std::string x0_2_text;
    std::string seed_m2_text;
    std::string seed_b2_text;
    std::string flip; // target:bit
    std::string lengths = "10000,20000,50000,100000,200000";
};

int cmd_sensitivity(const sensitivity_options& opt) {
    if (opt.n < 2 || opt.n > 64)
        throw usage_error("--n: must be in [2,64]");
    std::uint64_t x0 = parse_x0(opt.x0_text, opt.n);
    std::uint32_t sm = parse_seed(opt.seed_m_text, "--seed-m", nullptr);
    std::uint32_t sb = parse_seed(opt.seed_b_text, "--seed-b", nullptr);

    std::uint64_t x0_2 = opt.x0_2_text.empty() ? x0 : parse_x0(opt.x0_2_text, opt.n);
    std::uint32_t sm2 =
        opt.seed_m2_text.empty() ? sm : parse_seed(opt.seed_m2_text, "--seed-m2", nullptr);
    std::uint32_t sb2 =
        opt.seed_b2_text.empty() ? sb : parse_seed(opt.seed_b2_text, "--seed-b2", nullptr);

    if (!opt.flip.empty()) {
        const auto colon = opt.flip.find(':');
        if (colon == std::string::npos)
            throw usage_error("--flip: expected target:bit");
        const std::string target = opt.flip.substr(0, colon);
        const int bit = std::stoi(opt.flip.substr(colon + 1));
        if (target == "x0") {
            if (bit < 0 || bit >= opt.n)
                throw usage_error("--flip: x0 bit out of range");
            x0_2 ^= std::uint64_t{1} << bit;
        } else if (target == "seed-m") {
            if (bit < 0 || bit >= 32)
                throw usage_error("--flip: seed bit out of range");
            sm2 ^= 1u << bit;
        } else if (target == "seed-b") {
            if (bit < 0 || bit >= 32)
                throw usage_error("--flip: seed bit out of range");
            sb2 ^= 1u << bit;
        } else {
            throw usage_error("--flip: unknown target (x0, seed-m or seed-b)");
        }
    }
    if (sm2 == 0 || sb2 == 0)
        throw usage_error("perturbed seed is zero state; pick another bit");
    if (x0 == x0_2 && sm == sm2 && sb == sb2)
        throw usage_error(
            "the two parameterizations are identical; P would be trivially 0");

    std::cout << "length,p\n";
    for (const auto length : parse_length_csv(opt.lengths)) {
        auto gen_a = ciprng::seed_ci_generator(ciprng::bit_state(x0, opt.n), sm, sb);
        auto gen_b = ciprng::seed_ci_generator(ciprng::bit_state(x0_2, opt.n), sm2, sb2);
        const double p = ciprng::key_sensitivity(gen_a, gen_b, length);
        std::cout << length << ',' << p << '\n';
    }
    return exit_ok;
}

// --- wm ---

struct wm_options {
    std::string carrier_path;
    std::string watermark_path;
    std::string input_path;
    std::string key_text;
    std::string key_file;
    std::string out_path;
    int width = 0;
    int height = 0;
};

ciprng::watermark_key load_key(const wm_options& opt) {
    std::string text = opt.key_text;
    if (text.empty()) {
        if (opt.key_file.empty())
            throw usage_error("need --key or --key-file");
        std::ifstream in(opt.key_file);
        if (!in)
            throw data_error("cannot open " + opt.key_file);
        std::getline(in, text);
    }
    try {
        return ciprng::watermark_key::from_string(text);
    } catch (const std::exception& e) {
        throw usage_error(std::string("key: ") + e.what());
    }
}

int cmd_wm_embed(const wm_options& opt) {
    const auto key = load_key(opt);
    const auto carrier = ciprng::read_pgm(opt.carrier_path);
    const auto watermark = ciprng::read_pbm(opt.watermark_path);
    const auto marked = ciprng::embed(carrier, watermark, key);
    ciprng::write_pgm(opt.out_path, marked);
    return exit_ok;
}

int cmd_wm_extract(const wm_options& opt) {
    const auto key = load_key(opt);
    if (opt.width <= 0 || opt.height <= 0)
        throw usage_error("need --width and --height of the embedded watermark");
    const auto marked = ciprng::read_pgm(opt.input_path);
    const auto recovered = ciprng::extract(marked, key, opt.width, opt.height);
    ciprng::write_pbm(opt.out_path, recovered);
    return exit_ok;
}

void add_gen_flags(CLI::App* cmd, gen_options& opt) {
    cmd->add_option("--gen", opt.generator, "generator: xorshift, logistic, old-ci, new-ci")
        ->required();
    cmd->add_option("--n", opt.n, "cell count N for the CI generators");
    cmd->add_option("--x0", opt.x0_text, "initial state: N-bit string, integer, or time");
    cmd->add_option("--seed", opt.seed_text, "xorshift seed (u32 or time)");
    cmd->add_option("--seed-m", opt.seed_m_text, "m-draw xorshift seed (u32 or time)");
    cmd->add_option("--seed-b", opt.seed_b_text, "b-draw xorshift seed (u32 or time)");
    cmd->add_option("--lseed1", opt.lseed1, "first logistic seed in (0,1)");
    cmd->add_option("--lseed2", opt.lseed2, "second logistic seed in (0,1)");
    cmd->add_option("--r", opt.r, "logistic control parameter");
    cmd->add_option("--c", opt.c, "old-ci flip floor (default 3N)");
    cmd->add_option("--bits", opt.bits, "number of bits to emit");
    cmd->add_option("--count", opt.count, "number of states/words to emit");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CI(xorshift, xorshift) chaotic-iterations PRNG toolkit"};
    app.require_subcommand(1);

    gen_options gen_opt;
    auto* gen_cmd = app.add_subcommand("gen", "generate a bit or state stream");
    add_gen_flags(gen_cmd, gen_opt);
    gen_cmd->add_option("--inject-m", gen_opt.inject_m, "explicit m stream (testing hook)");
    gen_cmd->add_option("--inject-b", gen_opt.inject_b, "explicit b stream (testing hook)");
    gen_cmd->add_option("--format", gen_opt.format, "bits-ascii, bits-raw or integers-csv")
        ->check(CLI::IsMember({"bits-ascii", "bits-raw", "integers-csv"}));
    gen_cmd->add_option("--out,-o", gen_opt.out_path, "output file (default stdout)");
    gen_cmd->add_option("--export", gen_opt.export_args,
                        "export: FORMAT FILE (format: nist)")
        ->expected(2);

    test_options test_opt;
    auto* test_cmd = app.add_subcommand("test", "run the five-test battery");
    test_cmd->add_option("--input", test_opt.input_path,
                         "ASCII '0'/'1' bit stream file ('-' for stdin)");
    add_gen_flags(test_cmd, test_opt.gen);
    test_cmd->get_option("--gen")->required(false);
    test_cmd->add_option("--alpha", test_opt.alpha, "significance level");
    test_cmd->add_option("--poker-m", test_opt.poker_m, "poker pattern length (0 = auto)");
    test_cmd->add_option("--autocorr-d", test_opt.autocorr_d, "autocorrelation shift");
    test_cmd->add_flag("--csv", test_opt.csv, "CSV output");
    test_cmd->add_option("--export", test_opt.export_args,
                         "export: FORMAT FILE (format: nist)")
        ->expected(2);

    bench_options bench_opt;
    auto* bench_cmd = app.add_subcommand("bench", "compare generator throughput");
    bench_cmd->add_option("--lengths", bench_opt.lengths, "bit counts, e.g. 1e5,2e5,4e5");
    bench_cmd->add_option("--gens", bench_opt.gens, "generators to run");
    bench_cmd->add_option("--n", bench_opt.n, "cell count for the CI generators");
    bench_cmd->add_option("--c", bench_opt.c, "old-ci flip floor (default 3N)");
    bench_cmd->add_option("--runs", bench_opt.runs, "timing repetitions (median)");
    bench_cmd->add_flag("--table", bench_opt.table, "aligned table instead of CSV");

    sensitivity_options sens_opt;
    auto* sens_cmd = app.add_subcommand("sensitivity", "variance ratio sweep");
    sens_cmd->add_option("--n", sens_opt.n, "cell count");
    sens_cmd->add_option("--x0", sens_opt.x0_text, "initial state");
    sens_cmd->add_option("--seed-m", sens_opt.seed_m_text, "m-draw seed");
    sens_cmd->add_option("--seed-b", sens_opt.seed_b_text, "b-draw seed");
    sens_cmd->add_option("--x0-2", sens_opt.x0_2_text, "second initial state");
    sens_cmd->add_option("--seed-m2", sens_opt.seed_m2_text, "second m-draw seed");
    sens_cmd->add_option("--seed-b2", sens_opt.seed_b2_text, "second b-draw seed");
    sens_cmd->add_option("--flip", sens_opt.flip,
                         "derive the second set by flipping target:bit "
                         "(x0, seed-m or seed-b)");
    sens_cmd->add_option("--lengths", sens_opt.lengths, "sequence lengths");

    wm_options wm_opt;
    auto* wm_cmd = app.add_subcommand("wm", "watermark embed/extract");
    wm_cmd->require_subcommand(1);
    auto* embed_cmd = wm_cmd->add_subcommand("embed", "encrypt and embed a watermark");
    embed_cmd->add_option("--carrier", wm_opt.carrier_path, "PGM carrier image")->required();
    embed_cmd->add_option("--watermark", wm_opt.watermark_path, "PBM watermark")->required();
    embed_cmd->add_option("--key", wm_opt.key_text, "key text: N=.. x0=.. sm=.. sb=..");
    embed_cmd->add_option("--key-file", wm_opt.key_file, "file holding the key line");
    embed_cmd->add_option("--out,-o", wm_opt.out_path, "output PGM")->required();
    auto* extract_cmd = wm_cmd->add_subcommand("extract", "extract a watermark");
    extract_cmd->add_option("--input", wm_opt.input_path, "watermarked PGM")->required();
    extract_cmd->add_option("--key", wm_opt.key_text, "key text");
    extract_cmd->add_option("--key-file", wm_opt.key_file, "file holding the key line");
    extract_cmd->add_option("--width", wm_opt.width, "watermark width")->required();
    extract_cmd->add_option("--height", wm_opt.height, "watermark height")->required();
    extract_cmd->add_option("--out,-o", wm_opt.out_path, "output PBM")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen_opt);
        if (test_cmd->parsed()) {
            test_opt.have_gen = test_cmd->get_option("--gen")->count() > 0;
            return cmd_test(test_opt);
        }
        if (bench_cmd->parsed()) return cmd_bench(bench_opt);
        if (sens_cmd->parsed()) return cmd_sensitivity(sens_opt);
        if (wm_cmd->parsed()) {
            if (embed_cmd->parsed()) return cmd_wm_embed(wm_opt);
            if (extract_cmd->parsed()) return cmd_wm_extract(wm_opt);
        }
        throw usage_error("no subcommand");
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        // library-level precondition violations on user input
        std::cerr << "error: " << e.what() << '\n';
        const std::string what = e.what();
        if (what.find("zero state") != std::string::npos) return exit_usage;
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    }
}
