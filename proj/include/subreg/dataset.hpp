#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "subreg/att.hpp"
#include "subreg/expr.hpp"
#include "subreg/sampler.hpp"
#include "subreg/sha256.hpp"

namespace subreg {

inline constexpr std::string_view kGeneratorVersion = "subreg 0.1.0";

enum class SplitKind { Train, Dev, SR, SA, LR, LA };
enum class SizeTier { Large, Mid, Small };

inline constexpr std::array<SplitKind, 6> kAllSplitKinds = {
    SplitKind::Train, SplitKind::Dev, SplitKind::SR, SplitKind::SA, SplitKind::LR, SplitKind::LA};
inline constexpr std::array<SizeTier, 3> kAllSizeTiers = {SizeTier::Large, SizeTier::Mid,
                                                          SizeTier::Small};

inline std::string_view split_kind_name(SplitKind k) {
    switch (k) {
        case SplitKind::Train: return "Train";
        case SplitKind::Dev: return "Dev";
        case SplitKind::SR: return "SR";
        case SplitKind::SA: return "SA";
        case SplitKind::LR: return "LR";
        case SplitKind::LA: return "LA";
    }
    throw std::logic_error("unreachable");
}

inline std::string_view size_tier_name(SizeTier t) {
    switch (t) {
        case SizeTier::Large: return "Large";
        case SizeTier::Mid: return "Mid";
        case SizeTier::Small: return "Small";
    }
    throw std::logic_error("unreachable");
}

inline bool is_adversarial(SplitKind k) { return k == SplitKind::SA || k == SplitKind::LA; }

// Short splits cover lengths 20-29, long splits 31-50.
inline std::pair<int, int> split_length_range(SplitKind k) {
    if (k == SplitKind::LR || k == SplitKind::LA) return {31, 50};
    return {20, 29};
}

inline std::string split_filename(SplitKind k, SizeTier t) {
    return std::string(split_kind_name(k)) + "_" + std::string(size_tier_name(t)) + ".tsv";
}

struct Record {
    Word w;
    bool positive = false;
};

struct Split {
    SplitKind kind = SplitKind::Train;
    std::vector<Record> records;  // adversarial splits store each pair as pos,neg lines
};

struct Bundle {
    std::string name;
    std::uint64_t seed = 0;
    std::size_t records = 0;
    std::string pipeline_language_sha;
    bool label_swapped = false;
    Alphabet alphabet;
    std::map<std::string, Split> splits;  // key: "<Kind>_<Tier>"
};

namespace detail {

template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t nthreads = std::min<std::size_t>(threads, n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

// Generation context for one language: both sides minimized with layer
// counts, the edit transducer, and the seed-derived substream root.
// Substreams are keyed by split kind, length, and the canonical hash of the
// side machine, so the same machine draws the same strings no matter which
// polarity it plays.
struct BundleContext {
    Alphabet alphabet;
    Dfa pos_dfa, neg_dfa;
    LayerCounts pos_counts, neg_counts;
    std::string pos_hash, neg_hash;
    Fst edit;
    std::uint64_t seed = 0;
    std::size_t records = 100000;
    int threads = 1;

    static BundleContext make(const Dfa& language, std::uint64_t seed, std::size_t records,
                              int threads) {
        if (records == 0 || records % 4000 != 0)
            throw std::invalid_argument(
                "records per split must be a positive multiple of 4000 so every "
                "(length,label) stratum stays exact through downsampling");
        BundleContext ctx;
        ctx.pos_dfa = minimize(language);
        ctx.neg_dfa = complement(ctx.pos_dfa);
        ctx.alphabet = ctx.pos_dfa.alphabet;
        ctx.pos_counts = LayerCounts::build(ctx.pos_dfa, 50);
        ctx.neg_counts = LayerCounts::build(ctx.neg_dfa, 50);
        ctx.pos_hash = Sha256::hex(canonical_encoding(ctx.pos_dfa));
        ctx.neg_hash = Sha256::hex(canonical_encoding(ctx.neg_dfa));
        ctx.edit = edit1_transducer(ctx.alphabet);
        ctx.seed = seed;
        ctx.records = records;
        ctx.threads = threads;
        return ctx;
    }

    Prng stream(const std::string& tag) const { return Prng(seed).derive(tag); }

    const Dfa& side_dfa(bool positive) const { return positive ? pos_dfa : neg_dfa; }
    const LayerCounts& side_counts(bool positive) const { return positive ? pos_counts : neg_counts; }
    const std::string& side_hash(bool positive) const { return positive ? pos_hash : neg_hash; }
};

namespace detail {

inline std::vector<int> range_lengths(SplitKind k) {
    auto [lo, hi] = split_length_range(k);
    std::vector<int> out;
    for (int l = lo; l <= hi; ++l) out.push_back(l);
    return out;
}

inline std::string walk_tag(SplitKind kind, int len, const std::string& side_hash) {
    return std::string(split_kind_name(kind)) + "/len=" + std::to_string(len) + "/side=" + side_hash;
}

// Distinct words of one side and length from previously built splits.
inline std::vector<Word> distinct_words(std::initializer_list<const Split*> splits, bool positive,
                                        std::size_t len) {
    std::set<Word> seen;
    for (const Split* s : splits)
        for (const auto& r : s->records)
            if (r.positive == positive && r.w.size() == len) seen.insert(r.w);
    return {seen.begin(), seen.end()};
}

}  // namespace detail

// Training split: per length, an equal number of positive and negative
// draws with replacement.
inline Split build_train(const BundleContext& ctx) {
    auto lens = detail::range_lengths(SplitKind::Train);
    const std::size_t per = ctx.records / (2 * lens.size());
    for (int l : lens) {
        if (count_length(ctx.pos_dfa, l) == 0 || count_length(ctx.neg_dfa, l) == 0)
            throw std::runtime_error("language unusable at benchmark lengths: length " +
                                     std::to_string(l) + " is empty on one side");
    }
    std::vector<std::vector<Record>> by_len(lens.size());
    detail::parallel_for(lens.size(), ctx.threads, [&](std::size_t i) {
        int l = lens[i];
        for (bool positive : {true, false}) {
            CarvedSampler sampler(ctx.side_dfa(positive), ctx.side_counts(positive), l);
            Prng rng = ctx.stream(detail::walk_tag(SplitKind::Train, l, ctx.side_hash(positive)));
            for (std::size_t k = 0; k < per; ++k)
                by_len[i].push_back({sampler.sample(rng), positive});
        }
    });
    Split out;
    out.kind = SplitKind::Train;
    for (auto& v : by_len)
        for (auto& r : v) out.records.push_back(std::move(r));
    return out;
}

// Development split: same shape as train, sampled from the automaton carved
// by the train strings of the matching label; duplicates within dev are
// allowed.
inline Split build_dev(const BundleContext& ctx, const Split& train) {
    auto lens = detail::range_lengths(SplitKind::Dev);
    const std::size_t per = ctx.records / (2 * lens.size());
    std::vector<std::vector<Record>> by_len(lens.size());
    detail::parallel_for(lens.size(), ctx.threads, [&](std::size_t i) {
        int l = lens[i];
        for (bool positive : {true, false}) {
            CarvedSampler sampler(ctx.side_dfa(positive), ctx.side_counts(positive), l);
            for (const Word& w : detail::distinct_words({&train}, positive, l)) sampler.exclude(w);
            if (sampler.remaining() <= 0)
                throw std::runtime_error("carving the training set exhausted length " +
                                         std::to_string(l));
            Prng rng = ctx.stream(detail::walk_tag(SplitKind::Dev, l, ctx.side_hash(positive)));
            for (std::size_t k = 0; k < per; ++k)
                by_len[i].push_back({sampler.sample(rng), positive});
        }
    });
    Split out;
    out.kind = SplitKind::Dev;
    for (auto& v : by_len)
        for (auto& r : v) out.records.push_back(std::move(r));
    return out;
}

// Random test split (SR or LR): sampling without replacement from the
// machine carved by the train and dev strings of the matching label, so
// every test string is unique and disjoint from train and dev.
inline Split build_random_test(const BundleContext& ctx, SplitKind kind, const Split& train,
                               const Split& dev) {
    auto lens = detail::range_lengths(kind);
    const std::size_t per = ctx.records / (2 * lens.size());
    std::vector<std::vector<Record>> by_len(lens.size());
    detail::parallel_for(lens.size(), ctx.threads, [&](std::size_t i) {
        int l = lens[i];
        for (bool positive : {true, false}) {
            CarvedSampler sampler(ctx.side_dfa(positive), ctx.side_counts(positive), l);
            for (const Word& w : detail::distinct_words({&train, &dev}, positive, l))
                sampler.exclude(w);
            if (sampler.remaining() < BigInt(per))
                throw std::runtime_error("not enough distinct strings at length " +
                                         std::to_string(l) + " for " +
                                         std::string(split_kind_name(kind)));
            Prng rng = ctx.stream(detail::walk_tag(kind, l, ctx.side_hash(positive)));
            for (std::size_t k = 0; k < per; ++k)
                by_len[i].push_back({sampler.sample_without_replacement(rng), positive});
        }
    });
    Split out;
    out.kind = kind;
    for (auto& v : by_len)
        for (auto& r : v) out.records.push_back(std::move(r));
    return out;
}

// Adversarial test split (SA or LA): unique pairs (x, y) with x positive of
// the layer length, y negative, and edit distance exactly one, drawn by
// uniform-outbound-edge walks over the composed machine.  The positive side
// machine excludes train/dev positives, the negative side excludes train/dev
// negatives; drawn pairs are carved for uniqueness.
inline Split build_adversarial_test(const BundleContext& ctx, SplitKind kind, const Split& train,
                                    const Split& dev) {
    auto lens = detail::range_lengths(kind);
    const std::size_t pairs_per = ctx.records / (2 * lens.size());
    std::vector<std::vector<Record>> by_len(lens.size());
    detail::parallel_for(lens.size(), ctx.threads, [&](std::size_t i) {
        int l = lens[i];
        ExcludeTrie<Sym> ex_x;
        for (const Word& w : detail::distinct_words({&train, &dev}, true, l))
            if (accepts(ctx.pos_dfa, w)) ex_x.insert(std::span<const Sym>(w));
        ExcludeTrie<Sym> ex_y;
        for (int yl = l - 1; yl <= l + 1; ++yl) {
            if (yl < 0) continue;
            for (const Word& w : detail::distinct_words({&train, &dev}, false, yl))
                if (accepts(ctx.neg_dfa, w)) ex_y.insert(std::span<const Sym>(w));
        }
        PairSampler sampler(ctx.pos_dfa, ctx.neg_dfa, ctx.edit, l, ex_x, ex_y);
        if (sampler.remaining() < BigInt(pairs_per))
            throw std::runtime_error("adversarial composition too small at length " +
                                     std::to_string(l) + " for " +
                                     std::string(split_kind_name(kind)));
        Prng rng = ctx.stream("pairs/" + std::string(split_kind_name(kind)) +
                              "/len=" + std::to_string(l) + "/pos=" + ctx.pos_hash +
                              "/neg=" + ctx.neg_hash);
        for (std::size_t k = 0; k < pairs_per; ++k) {
            auto [x, y] = sampler.sample_and_carve(rng);
            by_len[i].push_back({std::move(x), true});
            by_len[i].push_back({std::move(y), false});
        }
    });
    Split out;
    out.kind = kind;
    for (auto& v : by_len)
        for (auto& r : v) out.records.push_back(std::move(r));
    return out;
}

// Nested downsampling: Mid keeps a seeded 1/10 of every (length,label)
// stratum of Large (pairs are atomic in adversarial splits), Small keeps
// 1/10 of Mid, preserving file order, balance, and per-length proportions.
inline std::pair<Split, Split> downsample_nested(std::uint64_t seed, const Split& large) {
    auto pick_tenth = [&](const std::vector<std::size_t>& stratum, const std::string& tag) {
        if (stratum.size() % 10 != 0)
            throw std::logic_error("stratum size not divisible by ten");
        std::vector<std::size_t> shuffled = stratum;
        Prng rng = Prng(seed).derive(tag);
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
        shuffled.resize(stratum.size() / 10);
        std::sort(shuffled.begin(), shuffled.end());
        return shuffled;
    };

    auto downsample_once = [&](const Split& src, std::string_view level) {
        std::map<std::string, std::vector<std::size_t>> strata;  // tag -> unit indices
        std::vector<std::size_t> unit_first;                     // unit -> first record index
        std::size_t unit_size = is_adversarial(src.kind) ? 2 : 1;
        for (std::size_t r = 0; r < src.records.size(); r += unit_size) {
            std::size_t unit = unit_first.size();
            unit_first.push_back(r);
            const Record& rec = src.records[r];
            std::string tag = std::string(level) + "/" + std::string(split_kind_name(src.kind)) +
                              "/len=" + std::to_string(rec.w.size());
            if (!is_adversarial(src.kind)) tag += rec.positive ? "/pos" : "/neg";
            strata[tag].push_back(unit);
        }
        std::vector<std::size_t> chosen;
        for (auto& [tag, units] : strata) {
            auto sel = pick_tenth(units, tag);
            chosen.insert(chosen.end(), sel.begin(), sel.end());
        }
        std::sort(chosen.begin(), chosen.end());
        Split out;
        out.kind = src.kind;
        for (std::size_t unit : chosen)
            for (std::size_t j = 0; j < unit_size; ++j)
                out.records.push_back(src.records[unit_first[unit] + j]);
        return out;
    };

    Split mid = downsample_once(large, "downsample-mid");
    Split small = downsample_once(mid, "downsample-small");
    return {std::move(mid), std::move(small)};
}

// Label switch: identical strings with positive and negative swapped; in
// adversarial splits the two lines of each pair swap so the positive line
// still comes first.
inline Split complement_split(const Split& s) {
    Split out;
    out.kind = s.kind;
    out.records = s.records;
    for (auto& r : out.records) r.positive = !r.positive;
    if (is_adversarial(s.kind)) {
        for (std::size_t i = 0; i + 1 < out.records.size(); i += 2)
            std::swap(out.records[i], out.records[i + 1]);
    }
    return out;
}

inline Bundle complement_bundle(const Bundle& b) {
    Bundle out = b;
    out.label_swapped = !b.label_swapped;
    for (auto& [name, split] : out.splits) split = complement_split(split);
    return out;
}

// ---------------------------------------------------------------------------
// Files and manifest.

inline std::string split_tsv(const Split& s, const Alphabet& alphabet) {
    std::string out;
    for (const auto& r : s.records) {
        out += alphabet.decode(r.w);
        out += '\t';
        out += r.positive ? "TRUE" : "FALSE";
        out += '\n';
    }
    return out;
}

struct TsvRecord {
    std::string text;
    bool positive;
};

inline std::vector<TsvRecord> parse_split_tsv(const std::string& text) {
    std::vector<TsvRecord> out;
    std::size_t pos = 0, lineno = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        ++lineno;
        std::string_view line(text.data() + pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw std::invalid_argument("missing tab on line " + std::to_string(lineno));
        std::string_view label = line.substr(tab + 1);
        bool positive;
        if (label == "TRUE") positive = true;
        else if (label == "FALSE") positive = false;
        else throw std::invalid_argument("bad label on line " + std::to_string(lineno));
        out.push_back({std::string(line.substr(0, tab)), positive});
    }
    return out;
}

// Builds all 18 splits for the language itself.  For a complement-family
// class (coSL, TcoSL, coSP) the pipeline runs on the base language (the
// complement of the given machine) and the labels are switched afterwards,
// which is how those datasets are defined.
inline Bundle generate_bundle(const Dfa& language, const std::string& name, std::uint64_t seed,
                              std::size_t records, int threads) {
    LanguageSpec spec = parse_spec(name);
    bool co_family = spec.label == ClassLabel::coSL || spec.label == ClassLabel::TcoSL ||
                     spec.label == ClassLabel::coSP;
    Dfa base = co_family ? complement(minimize(language)) : minimize(language);
    BundleContext ctx = BundleContext::make(base, seed, records, threads);

    Bundle b;
    b.name = name;
    b.seed = seed;
    b.records = records;
    b.pipeline_language_sha = ctx.pos_hash;
    b.alphabet = ctx.alphabet;

    Split train = build_train(ctx);
    Split dev = build_dev(ctx, train);
    std::map<SplitKind, Split> large;
    large.emplace(SplitKind::SR, build_random_test(ctx, SplitKind::SR, train, dev));
    large.emplace(SplitKind::LR, build_random_test(ctx, SplitKind::LR, train, dev));
    large.emplace(SplitKind::SA, build_adversarial_test(ctx, SplitKind::SA, train, dev));
    large.emplace(SplitKind::LA, build_adversarial_test(ctx, SplitKind::LA, train, dev));
    large.emplace(SplitKind::Train, std::move(train));
    large.emplace(SplitKind::Dev, std::move(dev));

    for (auto& [kind, split] : large) {
        auto [mid, small] = downsample_nested(ctx.seed, split);
        std::string base_name(split_kind_name(kind));
        b.splits[base_name + "_Large"] = std::move(split);
        b.splits[base_name + "_Mid"] = std::move(mid);
        b.splits[base_name + "_Small"] = std::move(small);
    }
    if (co_family) {
        Bundle swapped = complement_bundle(b);
        swapped.name = name;
        return swapped;
    }
    return b;
}

inline nlohmann::ordered_json bundle_manifest(const Bundle& b,
                                              const std::map<std::string, std::string>& file_text) {
    nlohmann::ordered_json m;
    m["format"] = "subreg-bundle/v1";
    m["generator"] = std::string(kGeneratorVersion);
    m["prng"] = std::string(kPrngAlgoId);
    m["name"] = b.name;
    m["seed"] = b.seed;
    m["records_per_split"] = b.records;
    m["pipeline_language_sha256"] = b.pipeline_language_sha;
    m["label_swapped"] = b.label_swapped;
    nlohmann::ordered_json files;
    for (auto& [fname, text] : file_text) {
        std::size_t pos = 0, neg = 0;
        for (const auto& r : parse_split_tsv(text)) (r.positive ? pos : neg) += 1;
        files[fname] = {{"records", pos + neg},
                        {"positives", pos},
                        {"negatives", neg},
                        {"sha256", Sha256::hex(text)}};
    }
    m["files"] = files;
    return m;
}

inline void write_bundle(const Bundle& b, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::map<std::string, std::string> file_text;
    for (SplitKind kind : kAllSplitKinds)
        for (SizeTier tier : kAllSizeTiers) {
            std::string key = std::string(split_kind_name(kind)) + "_" +
                              std::string(size_tier_name(tier));
            file_text[split_filename(kind, tier)] = split_tsv(b.splits.at(key), b.alphabet);
        }
    for (auto& [fname, text] : file_text) write_text_file(dir + "/" + fname, text);
    write_text_file(dir + "/manifest.json", bundle_manifest(b, file_text).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Verification.  Re-checks every stated property of a bundle directory
// against the language machine, with an edit-distance oracle independent of
// the transducer construction.

inline std::size_t levenshtein(const Word& a, const Word& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
            diag = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
        }
    }
    return row[b.size()];
}

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline VerifyReport verify_bundle(const std::string& dir, const Dfa& language) {
    namespace fs = std::filesystem;
    VerifyReport report;
    auto check = [&](const std::string& name, bool pass, std::string detail = "") {
        report.checks.push_back({name, pass, std::move(detail)});
    };

    nlohmann::json manifest;
    std::map<std::string, std::vector<TsvRecord>> files;
    try {
        manifest = nlohmann::json::parse(read_text_file(dir + "/manifest.json"));
        check("manifest readable", true);
    } catch (const std::exception& e) {
        check("manifest readable", false, e.what());
        return report;
    }

    for (SplitKind kind : kAllSplitKinds) {
        for (SizeTier tier : kAllSizeTiers) {
            std::string fname = split_filename(kind, tier);
            std::string text;
            try {
                text = read_text_file(dir + "/" + fname);
            } catch (const std::exception& e) {
                check(fname + " present", false, e.what());
                continue;
            }
            files[fname] = parse_split_tsv(text);
            // checksum + counts against the manifest
            bool sha_ok = false, counts_ok = false;
            if (manifest.contains("files") && manifest["files"].contains(fname)) {
                const auto& m = manifest["files"][fname];
                sha_ok = m.value("sha256", "") == Sha256::hex(text);
                std::size_t pos = 0, neg = 0;
                for (const auto& r : files[fname]) (r.positive ? pos : neg) += 1;
                counts_ok = m.value("records", std::size_t(0)) == pos + neg &&
                            m.value("positives", std::size_t(0)) == pos &&
                            m.value("negatives", std::size_t(0)) == neg;
            }
            check(fname + " checksum matches manifest", sha_ok);
            check(fname + " counts match manifest", counts_ok);
        }
    }

    auto word_of = [&](const TsvRecord& r) { return language.alphabet.encode(r.text); };

    for (SplitKind kind : kAllSplitKinds) {
        auto [lo, hi] = split_length_range(kind);
        for (SizeTier tier : kAllSizeTiers) {
            std::string fname = split_filename(kind, tier);
            auto it = files.find(fname);
            if (it == files.end()) continue;
            const auto& recs = it->second;

            std::size_t pos = 0, neg = 0;
            std::map<std::size_t, std::size_t> by_len;
            bool member_ok = true;
            std::string member_detail;
            for (std::size_t i = 0; i < recs.size(); ++i) {
                Word w;
                try {
                    w = word_of(recs[i]);
                } catch (const std::exception& e) {
                    member_ok = false;
                    member_detail = fname + " line " + std::to_string(i + 1) + ": " + e.what();
                    break;
                }
                (recs[i].positive ? pos : neg) += 1;
                by_len[w.size()] += 1;
                if (accepts(language, w) != recs[i].positive) {
                    member_ok = false;
                    member_detail = fname + " line " + std::to_string(i + 1) + ": label mismatch";
                    break;
                }
            }
            check(fname + " membership matches labels", member_ok, member_detail);
            check(fname + " balanced 50/50", pos == neg,
                  std::to_string(pos) + " vs " + std::to_string(neg));
            bool uniform = !by_len.empty();
            std::size_t want = recs.size() / static_cast<std::size_t>(hi - lo + 1);
            for (int l = lo; l <= hi; ++l)
                uniform = uniform && by_len.count(l) && by_len.at(l) == want;
            uniform = uniform && by_len.size() == static_cast<std::size_t>(hi - lo + 1);
            check(fname + " per-length histogram uniform", uniform);

            if (!is_adversarial(kind) && kind != SplitKind::Train && kind != SplitKind::Dev) {
                std::set<std::string> seen;
                bool unique = true;
                for (const auto& r : recs) unique = unique && seen.insert(r.text).second;
                check(fname + " strings unique", unique);
            }
            if (is_adversarial(kind)) {
                bool pair_ok = recs.size() % 2 == 0;
                bool dist_ok = true;
                std::set<std::pair<std::string, std::string>> pair_seen;
                bool pair_unique = true;
                std::string detail;
                for (std::size_t i = 0; pair_ok && i + 1 < recs.size(); i += 2) {
                    if (!recs[i].positive || recs[i + 1].positive) {
                        pair_ok = false;
                        detail = "pair at line " + std::to_string(i + 1) + " not positive-first";
                        break;
                    }
                    if (levenshtein(word_of(recs[i]), word_of(recs[i + 1])) != 1) {
                        dist_ok = false;
                        detail = "pair at line " + std::to_string(i + 1) + " edit distance != 1";
                        break;
                    }
                    pair_unique =
                        pair_unique && pair_seen.emplace(recs[i].text, recs[i + 1].text).second;
                }
                check(fname + " pairs positive-first", pair_ok, detail);
                check(fname + " pair edit distance exactly 1", dist_ok, detail);
                check(fname + " pairs unique", pair_unique);
            }
        }
    }

    // Disjointness at the Large tier (the other tiers are subsets).
    auto strings_of = [&](SplitKind kind) {
        std::set<std::string> out;
        auto it = files.find(split_filename(kind, SizeTier::Large));
        if (it != files.end())
            for (const auto& r : it->second) out.insert(r.text);
        return out;
    };
    std::set<std::string> train = strings_of(SplitKind::Train);
    std::set<std::string> dev = strings_of(SplitKind::Dev);
    bool train_dev_disjoint = true;
    for (const auto& s : dev) train_dev_disjoint = train_dev_disjoint && !train.count(s);
    check("train and dev disjoint", train_dev_disjoint);
    std::set<std::string> train_dev = train;
    train_dev.insert(dev.begin(), dev.end());
    for (SplitKind kind : {SplitKind::SR, SplitKind::SA, SplitKind::LR, SplitKind::LA}) {
        bool disjoint = true;
        std::string offender;
        for (const auto& s : strings_of(kind))
            if (train_dev.count(s)) {
                disjoint = false;
                offender = s;
                break;
            }
        check(std::string(split_kind_name(kind)) + " disjoint from train+dev", disjoint, offender);
    }

    // Nesting as multisets; pairs nest atomically.
    for (SplitKind kind : kAllSplitKinds) {
        auto multiset_of = [&](SizeTier tier) {
            std::map<std::string, std::size_t> m;
            const auto& recs = files.at(split_filename(kind, tier));
            if (is_adversarial(kind)) {
                for (std::size_t i = 0; i + 1 < recs.size(); i += 2)
                    m[recs[i].text + "\t" + recs[i + 1].text] += 1;
            } else {
                for (const auto& r : recs) m[r.text + "\t" + (r.positive ? "T" : "F")] += 1;
            }
            return m;
        };
        bool ok = true;
        if (files.count(split_filename(kind, SizeTier::Large)) &&
            files.count(split_filename(kind, SizeTier::Mid)) &&
            files.count(split_filename(kind, SizeTier::Small))) {
            auto large = multiset_of(SizeTier::Large);
            auto mid = multiset_of(SizeTier::Mid);
            auto small = multiset_of(SizeTier::Small);
            auto included = [](const auto& inner, const auto& outer) {
                for (auto& [k, v] : inner) {
                    auto it = outer.find(k);
                    if (it == outer.end() || it->second < v) return false;
                }
                return true;
            };
            ok = included(small, mid) && included(mid, large);
        } else {
            ok = false;
        }
        check(std::string(split_kind_name(kind)) + " nesting Small within Mid within Large", ok);
    }

    return report;
}

}  // namespace subreg
