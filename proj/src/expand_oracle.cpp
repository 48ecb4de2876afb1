#include "ncm/expand_oracle.hpp"

#include "ncm/text.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <functional>
#include <optional>
#include <ostream>

namespace ncm::oracle {

namespace {

using Measure = std::array<std::int64_t, 3>;

class Scheduler {
public:
    explicit Scheduler(std::uint64_t seed) {
        if (seed) rng_.emplace(seed);
    }
    std::size_t pick(std::size_t n) {
        if (!rng_ || n <= 1) return 0;
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(*rng_);
    }

private:
    std::optional<std::mt19937_64> rng_;
};

template <class Item>
class Worklist {
public:
    Worklist(const Options& opt) : sched_(opt.schedule_seed), max_steps_(opt.max_steps) {}

    void push(Item it) { pending_.push_back(std::move(it)); }
    bool empty() const { return pending_.empty(); }
    Item take() {
        std::size_t i = sched_.pick(pending_.size());
        std::swap(pending_[i], pending_.back());
        Item it = std::move(pending_.back());
        pending_.pop_back();
        if (++steps_ > max_steps_) throw NonTermination("rewrite step bound exceeded");
        return it;
    }
    Scheduler& sched() { return sched_; }

private:
    std::vector<Item> pending_;
    Scheduler sched_;
    std::uint64_t max_steps_;
    std::uint64_t steps_ = 0;
};

void check_decrease(const Measure& parent, const Measure& child, const char* rule) {
    if (!(child < parent)) throw NonTermination(std::string("measure did not decrease under rule ") + rule);
}

template <class T>
std::vector<T> erase_at(std::vector<T> v, std::size_t i) {
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
    return v;
}

// ---------------------------------------------------------------- free

struct FreeItem {
    Expr scalar;
    std::vector<unsigned> idx;
    std::vector<Expr> x;
    std::vector<bool> centered;

    Measure measure() const {
        std::int64_t plain = 0;
        for (bool c : centered) plain += !c;
        return {static_cast<std::int64_t>(x.size()), plain, 0};
    }
    Expr formal() const { return scalar * product(x); }
};

// ---------------------------------------------------------------- right and strong

enum class Phase { Raw, Std, Uncenter };
enum class SlotState { Plain, RhoCentered, RCentered };

struct Slot {
    std::vector<int> letters;
    SlotState state = SlotState::Plain;
};

struct Entry {
    Expr value;
    bool centered = false;
};

struct RItem {
    Expr prefix = Expr::one();
    std::vector<Entry> b;
    std::vector<Slot> a;
    Phase phase = Phase::Raw;
    std::int64_t origin = 0;

    std::int64_t len() const { return static_cast<std::int64_t>(a.size()); }

    Measure measure() const {
        switch (phase) {
            case Phase::Raw: {
                std::int64_t u = 0;
                for (std::size_t j = 1; j + 1 < b.size(); ++j) u += !b[j].centered;
                return {len(), 3, u};
            }
            case Phase::Std: {
                std::int64_t p = 0;
                for (const auto& s : a) p += s.state == SlotState::Plain;
                return {origin, 2, p};
            }
            case Phase::Uncenter: {
                std::int64_t c = 0;
                for (const auto& s : a) c += s.state != SlotState::Plain;
                return {len() + 1, 1, c};
            }
        }
        return {};
    }

    bool interior_centered() const {
        for (std::size_t j = 1; j + 1 < b.size(); ++j)
            if (!b[j].centered) return false;
        return true;
    }
};

using LetterFn = std::function<Expr(const std::vector<int>&)>;

struct RightEngine {
    LetterFn rho_of;
    LetterFn r_of;         // strong only
    LetterFn letter_expr;  // traces only
    FunctionalKind nu_kind = FunctionalKind::Nu;
    bool strong = false;

    Expr slot_expr(const Slot& s) const {
        Expr x = letter_expr(s.letters);
        switch (s.state) {
            case SlotState::Plain: return x;
            case SlotState::RhoCentered: return x - rho_of(s.letters);
            case SlotState::RCentered: return x - r_of(s.letters);
        }
        return x;
    }

    Expr formal(const RItem& it) const {
        Expr acc = it.prefix * it.b[0].value;
        for (std::size_t j = 0; j < it.a.size(); ++j) acc = acc * slot_expr(it.a[j]) * it.b[j + 1].value;
        return acc;
    }

    // Replaces slot j by m and merges it with its neighbours.
    static RItem merge_slot(const RItem& it, std::size_t j, const Expr& m) {
        RItem c = it;
        c.b[j] = Entry{it.b[j].value * m * it.b[j + 1].value, false};
        c.a.erase(c.a.begin() + static_cast<std::ptrdiff_t>(j));
        c.b.erase(c.b.begin() + static_cast<std::ptrdiff_t>(j + 1));
        return c;
    }

    static RItem drop_first(const RItem& it, const Expr& new_prefix) {
        RItem c;
        c.prefix = new_prefix;
        c.b.assign(it.b.begin() + 1, it.b.end());
        c.a.assign(it.a.begin() + 1, it.a.end());
        c.phase = Phase::Uncenter;
        return c;
    }

    Expr run(RItem start, const Options& opt, RewriteTrace* trace) const {
        Worklist<RItem> work(opt);
        work.push(std::move(start));
        Expr result;
        while (!work.empty()) {
            RItem it = work.take();
            std::vector<RItem> children;
            const char* rule = nullptr;
            Expr value;
            bool produced = false;
            const std::size_t l = it.a.size();

            if (l == 0) {
                rule = "extract";
                value = it.prefix * it.b[0].value;
                produced = true;
            } else if (it.phase == Phase::Raw) {
                std::vector<std::size_t> cand;
                for (std::size_t j = 1; j < l; ++j)
                    if (!it.b[j].centered) cand.push_back(j);
                if (cand.empty()) {
                    rule = "standard-form";
                    RItem c = it;
                    c.phase = Phase::Std;
                    c.origin = c.len();
                    children.push_back(std::move(c));
                } else {
                    rule = "center-b";
                    std::size_t j = cand[work.sched().pick(cand.size())];
                    RItem keep = it;
                    keep.b[j] = Entry{centered(nu_kind, it.b[j].value), true};
                    children.push_back(std::move(keep));
                    Expr s = apply_functional(nu_kind, it.b[j].value);
                    if (!s.is_zero()) {
                        RItem drop = it;
                        drop.b[0].value = drop.b[0].value * s;
                        auto& left = drop.a[j - 1].letters;
                        left.insert(left.end(), it.a[j].letters.begin(), it.a[j].letters.end());
                        drop.a.erase(drop.a.begin() + static_cast<std::ptrdiff_t>(j));
                        drop.b.erase(drop.b.begin() + static_cast<std::ptrdiff_t>(j));
                        children.push_back(std::move(drop));
                    }
                }
            } else if (it.phase == Phase::Std) {
                std::vector<std::size_t> cand;
                for (std::size_t j = 0; j < l; ++j)
                    if (it.a[j].state == SlotState::Plain) cand.push_back(j);
                if (cand.empty()) {
                    if (it.interior_centered()) {
                        rule = "vanish";
                    } else {
                        rule = "type-II";
                        RItem c = it;
                        c.phase = Phase::Uncenter;
                        children.push_back(std::move(c));
                    }
                } else {
                    rule = "center-a";
                    std::size_t j = cand[work.sched().pick(cand.size())];
                    RItem keep = it;
                    if (strong && j == 0) {
                        keep.a[0].state = SlotState::RCentered;
                        children.push_back(std::move(keep));
                        children.push_back(drop_first(it, it.prefix * it.b[0].value * r_of(it.a[0].letters)));
                    } else {
                        keep.a[j].state = SlotState::RhoCentered;
                        children.push_back(std::move(keep));
                        children.push_back(merge_slot(it, j, rho_of(it.a[j].letters)));
                    }
                }
            } else {
                std::vector<std::size_t> cand;
                for (std::size_t j = 0; j < l; ++j)
                    if (it.a[j].state != SlotState::Plain) cand.push_back(j);
                if (cand.empty()) {
                    rule = "type-I";
                    RItem c = it;
                    c.phase = Phase::Raw;
                    children.push_back(std::move(c));
                } else {
                    rule = "uncenter";
                    std::size_t j = cand[work.sched().pick(cand.size())];
                    RItem keep = it;
                    keep.a[j].state = SlotState::Plain;
                    children.push_back(std::move(keep));
                    if (it.a[j].state == SlotState::RCentered) {
                        children.push_back(drop_first(it, -(it.prefix * it.b[0].value * r_of(it.a[0].letters))));
                    } else {
                        children.push_back(merge_slot(it, j, -rho_of(it.a[j].letters)));
                    }
                }
            }

            Measure m = it.measure();
            for (const auto& c : children) check_decrease(m, c.measure(), rule);
            if (produced) result += value;
            if (trace && letter_expr) {
                Expr after = value;
                for (const auto& c : children) after += formal(c);
                trace->steps.push_back({rule, formal(it), after});
            }
            for (auto& c : children) work.push(std::move(c));
        }
        if (trace) trace->result = result;
        return result;
    }
};

RItem start_item(const std::vector<Expr>& b, std::size_t letters) {
    RItem it;
    for (const auto& x : b) it.b.push_back(Entry{x, false});
    for (std::size_t j = 0; j < letters; ++j) it.a.push_back(Slot{{static_cast<int>(j)}, SlotState::Plain});
    return it;
}

Expr right_plain(const RWord& x, const Options& opt, bool strong) {
    if (x.b.size() != x.a.size() + 1) throw std::invalid_argument("malformed right word");
    const std::vector<Expr>& letters = x.a;
    auto prod = [&letters](const std::vector<int>& ids) {
        Expr p = Expr::one();
        for (int i : ids) p *= letters[static_cast<std::size_t>(i)];
        return p;
    };
    RightEngine eng;
    eng.rho_of = [prod](const std::vector<int>& ids) { return rho(prod(ids)); };
    eng.r_of = [prod](const std::vector<int>& ids) { return cap_r(prod(ids)); };
    eng.letter_expr = prod;
    eng.strong = strong;
    return eng.run(start_item(x.b, x.a.size()), opt, opt.trace);
}

// ---------------------------------------------------------------- left

struct LItem {
    std::vector<Expr> a;
    std::vector<SlotState> a_state;  // interior entries only are ever centered
    std::vector<Entry> b;
    Phase phase = Phase::Raw;
    std::int64_t origin = 0;

    std::int64_t len() const { return static_cast<std::int64_t>(b.size()); }

    Measure measure() const {
        switch (phase) {
            case Phase::Raw: {
                std::int64_t u = 0;
                for (const auto& e : b) u += !e.centered;
                return {len(), 3, u};
            }
            case Phase::Std: {
                std::int64_t p = 0;
                for (std::size_t j = 1; j + 1 < a.size(); ++j) p += a_state[j] == SlotState::Plain;
                return {origin, 2, p};
            }
            case Phase::Uncenter: {
                std::int64_t c = 0;
                for (std::size_t j = 1; j + 1 < a.size(); ++j) c += a_state[j] != SlotState::Plain;
                return {len() + 1, 1, c};
            }
        }
        return {};
    }

    Expr formal() const {
        auto entry = [&](std::size_t j) { return a_state[j] == SlotState::Plain ? a[j] : a[j] - rho(a[j]); };
        Expr acc = entry(0);
        for (std::size_t j = 0; j < b.size(); ++j) acc = acc * b[j].value * entry(j + 1);
        return acc;
    }

    LItem merge_a(std::size_t j, const Expr& m) const {
        LItem c = *this;
        c.b[j - 1] = Entry{b[j - 1].value * m * b[j].value, false};
        c.a.erase(c.a.begin() + static_cast<std::ptrdiff_t>(j));
        c.a_state.erase(c.a_state.begin() + static_cast<std::ptrdiff_t>(j));
        c.b.erase(c.b.begin() + static_cast<std::ptrdiff_t>(j));
        return c;
    }
};

// ---------------------------------------------------------------- dilation

struct TimePoint {
    Rational key;
    Rational value;
};

struct TimedLetter {
    TimePoint t;
    Expr x;
};

using Timed = std::vector<TimedLetter>;

Expr dilation(Timed w, const Options& opt);

Expr dilation(Timed w, const Options& opt) {
    if (w.empty()) return Expr::one();
    Timed merged;
    for (auto& l : w) {
        if (!merged.empty() && merged.back().t.key == l.t.key) {
            if (merged.back().t.value != l.t.value) throw std::invalid_argument("equal structure times carry different values");
            merged.back().x = merged.back().x * l.x;
        } else {
            merged.push_back(std::move(l));
        }
    }
    if (merged.size() == 1) return phi(merged[0].t.value, merged[0].x);

    TimePoint tau = merged[0].t;
    for (const auto& l : merged)
        if (l.t.key < tau.key) tau = l.t;
    if (tau.key > 0) {
        for (auto& l : merged) {
            l.t.key -= tau.key;
            l.t.value -= tau.value;
        }
        return phi(tau.value, dilation(std::move(merged), opt));
    }

    std::vector<Expr> b{Expr::one()};
    std::vector<Timed> blocks;
    bool in_block = false;
    for (auto& l : merged) {
        if (l.t.key == 0) {
            if (in_block) b.push_back(Expr::one());
            in_block = false;
            b.back() *= l.x;
        } else {
            if (!in_block) blocks.emplace_back();
            in_block = true;
            blocks.back().push_back(std::move(l));
        }
    }
    if (in_block) b.push_back(Expr::one());

    RightEngine eng;
    eng.nu_kind = FunctionalKind::Omega;
    Options inner = opt;
    inner.trace = nullptr;
    eng.rho_of = [&blocks, inner](const std::vector<int>& ids) {
        Timed cat;
        for (int i : ids) {
            const auto& blk = blocks[static_cast<std::size_t>(i)];
            cat.insert(cat.end(), blk.begin(), blk.end());
        }
        return dilation(std::move(cat), inner);
    };
    return eng.run(start_item(b, blocks.size()), inner, nullptr);
}

Expr random_entry(std::mt19937_64& rng, Algebra alg) {
    std::uniform_int_distribution<std::uint32_t> id(1, 4);
    Expr e = Expr::gen(alg, id(rng));
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) e *= Expr::gen(alg, id(rng));
    return e;
}

}  // namespace

void RewriteTrace::dump_jsonl(std::ostream& os) const {
    for (const auto& s : steps) {
        nlohmann::json j{{"rule", s.rule}, {"before", canonical_text(s.before)}, {"after", canonical_text(s.after)}};
        os << j.dump() << '\n';
    }
}

Expr expand_free(const std::vector<unsigned>& iota, const std::vector<Expr>& a, const Options& opt) {
    if (iota.size() != a.size()) throw std::invalid_argument("expand_free: length mismatch");
    Worklist<FreeItem> work(opt);
    work.push(FreeItem{Expr::one(), iota, a, std::vector<bool>(a.size(), false)});
    Expr result;
    while (!work.empty()) {
        FreeItem it = work.take();
        std::vector<FreeItem> children;
        const char* rule;
        Expr value;
        std::vector<std::size_t> adjacent, plain;
        for (std::size_t k = 0; k + 1 < it.x.size(); ++k)
            if (it.idx[k] == it.idx[k + 1]) adjacent.push_back(k);
        for (std::size_t k = 0; k < it.x.size(); ++k)
            if (!it.centered[k]) plain.push_back(k);

        if (it.x.empty()) {
            rule = "extract";
            value = it.scalar;
        } else if (!adjacent.empty()) {
            rule = "merge";
            std::size_t k = adjacent[work.sched().pick(adjacent.size())];
            FreeItem c = it;
            c.x[k] = it.x[k] * it.x[k + 1];
            c.centered[k] = false;
            c.x = erase_at(c.x, k + 1);
            c.idx = erase_at(c.idx, k + 1);
            c.centered.erase(c.centered.begin() + static_cast<std::ptrdiff_t>(k + 1));
            children.push_back(std::move(c));
        } else if (!plain.empty()) {
            rule = "center";
            std::size_t k = plain[work.sched().pick(plain.size())];
            Expr s = omega(it.x[k]);
            FreeItem keep = it;
            keep.x[k] = it.x[k] - s;
            keep.centered[k] = true;
            children.push_back(std::move(keep));
            if (!s.is_zero()) {
                FreeItem drop = it;
                drop.scalar = it.scalar * s;
                drop.x = erase_at(drop.x, k);
                drop.idx = erase_at(drop.idx, k);
                drop.centered.erase(drop.centered.begin() + static_cast<std::ptrdiff_t>(k));
                children.push_back(std::move(drop));
            }
        } else {
            rule = "vanish";
        }
        Measure m = it.measure();
        for (const auto& c : children) check_decrease(m, c.measure(), rule);
        result += value;
        if (opt.trace) {
            Expr after = value;
            for (const auto& c : children) after += c.formal();
            opt.trace->steps.push_back({rule, it.formal(), after});
        }
        for (auto& c : children) work.push(std::move(c));
    }
    if (opt.trace) opt.trace->result = result;
    return result;
}

Expr expand_right_lib(const RWord& x, const Options& opt) { return right_plain(x, opt, false); }

Expr expand_strong_right(const RWord& x, const Options& opt) { return right_plain(x, opt, true); }

Expr expand_left_lib(const LWord& y, const Options& opt) {
    if (y.a.size() != y.b.size() + 1) throw std::invalid_argument("malformed left word");
    Worklist<LItem> work(opt);
    LItem start;
    start.a = y.a;
    start.a_state.assign(y.a.size(), SlotState::Plain);
    for (const auto& b : y.b) start.b.push_back(Entry{b, false});
    work.push(std::move(start));
    Expr result;
    while (!work.empty()) {
        LItem it = work.take();
        std::vector<LItem> children;
        const char* rule = nullptr;
        Expr value;
        const std::size_t l = it.b.size();

        if (l == 0) {
            rule = "extract";
            value = it.a[0];
        } else if (it.phase == Phase::Raw) {
            std::vector<std::size_t> cand;
            for (std::size_t j = 0; j < l; ++j)
                if (!it.b[j].centered) cand.push_back(j);
            if (cand.empty()) {
                rule = "standard-form";
                LItem c = it;
                c.phase = Phase::Std;
                c.origin = c.len();
                children.push_back(std::move(c));
            } else {
                rule = "center-b";
                std::size_t j = cand[work.sched().pick(cand.size())];
                LItem keep = it;
                keep.b[j] = Entry{centered(FunctionalKind::Nu, it.b[j].value), true};
                children.push_back(std::move(keep));
                Expr s = nu(it.b[j].value);
                if (!s.is_zero()) {
                    LItem drop = it;
                    drop.a[0] = drop.a[0] * s;
                    drop.a[j] = drop.a[j] * it.a[j + 1];
                    drop.a_state[j] = SlotState::Plain;
                    drop.a.erase(drop.a.begin() + static_cast<std::ptrdiff_t>(j + 1));
                    drop.a_state.erase(drop.a_state.begin() + static_cast<std::ptrdiff_t>(j + 1));
                    drop.b.erase(drop.b.begin() + static_cast<std::ptrdiff_t>(j));
                    children.push_back(std::move(drop));
                }
            }
        } else if (it.phase == Phase::Std) {
            std::vector<std::size_t> cand;
            for (std::size_t j = 1; j < l; ++j)
                if (it.a_state[j] == SlotState::Plain) cand.push_back(j);
            if (cand.empty()) {
                bool standard = true;
                for (const auto& e : it.b) standard = standard && e.centered;
                if (standard) {
                    rule = "vanish";
                } else {
                    rule = "type-II";
                    LItem c = it;
                    c.phase = Phase::Uncenter;
                    children.push_back(std::move(c));
                }
            } else {
                rule = "center-a";
                std::size_t j = cand[work.sched().pick(cand.size())];
                LItem keep = it;
                keep.a_state[j] = SlotState::RhoCentered;
                children.push_back(std::move(keep));
                children.push_back(it.merge_a(j, rho(it.a[j])));
            }
        } else {
            std::vector<std::size_t> cand;
            for (std::size_t j = 1; j < l; ++j)
                if (it.a_state[j] != SlotState::Plain) cand.push_back(j);
            if (cand.empty()) {
                rule = "type-I";
                LItem c = it;
                c.phase = Phase::Raw;
                children.push_back(std::move(c));
            } else {
                rule = "uncenter";
                std::size_t j = cand[work.sched().pick(cand.size())];
                LItem keep = it;
                keep.a_state[j] = SlotState::Plain;
                children.push_back(std::move(keep));
                children.push_back(it.merge_a(j, -rho(it.a[j])));
            }
        }
        Measure m = it.measure();
        for (const auto& c : children) check_decrease(m, c.measure(), rule);
        result += value;
        if (opt.trace) {
            Expr after = value;
            for (const auto& c : children) after += c.formal();
            opt.trace->steps.push_back({rule, it.formal(), after});
        }
        for (auto& c : children) work.push(std::move(c));
    }
    if (opt.trace) opt.trace->result = result;
    return result;
}

Expr expand_dilation(const TimedWord& tw, const Options& opt) {
    return expand_dilation_structured(tw.times, tw.times, tw.letters, opt);
}

Expr expand_dilation_structured(const std::vector<Rational>& structure, const std::vector<Rational>& values,
                                const std::vector<Expr>& letters, const Options& opt) {
    if (structure.size() != letters.size() || values.size() != letters.size())
        throw std::invalid_argument("expand_dilation: length mismatch");
    if (letters.empty()) throw std::invalid_argument("expand_dilation: empty word");
    Timed w;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (structure[i] < 0 || values[i] < 0) throw std::invalid_argument("expand_dilation: negative time");
        w.push_back({{structure[i], values[i]}, letters[i]});
    }
    return dilation(std::move(w), opt);
}

RWord random_rword(std::mt19937_64& rng, std::size_t max_len) {
    std::size_t l = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
    RWord x;
    x.b.push_back(random_entry(rng, Algebra::B));
    for (std::size_t j = 0; j < l; ++j) {
        x.a.push_back(random_entry(rng, Algebra::A));
        x.b.push_back(random_entry(rng, Algebra::B));
    }
    return x;
}

LWord random_lword(std::mt19937_64& rng, std::size_t max_len) {
    std::size_t l = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
    LWord y;
    y.a.push_back(random_entry(rng, Algebra::A));
    for (std::size_t j = 0; j < l; ++j) {
        y.b.push_back(random_entry(rng, Algebra::B));
        y.a.push_back(random_entry(rng, Algebra::A));
    }
    return y;
}

TimedWord random_timed_word(std::mt19937_64& rng, std::size_t max_len) {
    static const Rational pool[] = {Rational(1, 2), Rational(1), Rational(2), Rational(3)};
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_len)(rng);
    std::vector<Rational> times{0};
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    std::size_t first = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    times.push_back(pool[first]);
    if (k == 2) times.push_back(pool[(first + std::uniform_int_distribution<std::size_t>(1, 3)(rng)) % 4]);
    TimedWord tw;
    std::uniform_int_distribution<std::size_t> pick(0, times.size() - 1);
    for (std::size_t i = 0; i < n; ++i) {
        tw.times.push_back(times[pick(rng)]);
        tw.letters.push_back(Expr::a(static_cast<std::uint32_t>(i + 1)));
    }
    return tw;
}

}  // namespace ncm::oracle
