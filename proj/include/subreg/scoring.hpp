#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace subreg {

struct PredictionRecord {
    std::string text;
    bool gold = false;
    double prob = 0.0;  // predicted probability of the positive class
};

struct Metrics {
    double accuracy = 0;
    double precision = 0;
    double recall = 0;
    double f_score = 0;
    double brier = 0;
    double auc = 0;
};

// Hard prediction threshold is 0.5; a probability of exactly 0.5 counts as
// a positive prediction.
inline bool hard_positive(double prob) { return prob >= 0.5; }

// AUC by the rank formula with midranks, so ties between a positive and a
// negative count half.
inline double auc_rank(const std::vector<PredictionRecord>& recs) {
    std::vector<std::size_t> order(recs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return recs[a].prob < recs[b].prob; });
    std::vector<double> rank(recs.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && recs[order[j + 1]].prob == recs[order[i]].prob) ++j;
        double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
        i = j + 1;
    }
    double pos_rank_sum = 0;
    std::size_t pos = 0, neg = 0;
    for (std::size_t k = 0; k < recs.size(); ++k) {
        if (recs[k].gold) {
            pos_rank_sum += rank[k];
            ++pos;
        } else {
            ++neg;
        }
    }
    if (pos == 0 || neg == 0) throw std::invalid_argument("AUC needs both classes present");
    double p = static_cast<double>(pos);
    return (pos_rank_sum - p * (p + 1) / 2.0) / (p * static_cast<double>(neg));
}

inline Metrics score(const std::vector<PredictionRecord>& recs) {
    if (recs.empty()) throw std::invalid_argument("empty prediction file");
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    double brier = 0;
    for (const auto& r : recs) {
        if (r.prob < 0.0 || r.prob > 1.0) throw std::invalid_argument("probability out of [0,1]");
        bool pred = hard_positive(r.prob);
        if (pred && r.gold) ++tp;
        else if (pred && !r.gold) ++fp;
        else if (!pred && !r.gold) ++tn;
        else ++fn;
        double g = r.gold ? 1.0 : 0.0;
        brier += (r.prob - g) * (r.prob - g);
    }
    Metrics m;
    const double n = static_cast<double>(recs.size());
    m.accuracy = static_cast<double>(tp + tn) / n;
    m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    m.f_score = m.precision + m.recall == 0
                    ? 0.0
                    : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    m.brier = brier / n;
    m.auc = auc_rank(recs);
    return m;
}

// Prediction TSV: string <TAB> gold <TAB> prob, labels TRUE/FALSE.
inline std::vector<PredictionRecord> parse_predictions(const std::string& text) {
    std::vector<PredictionRecord> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos)
            throw std::invalid_argument("malformed prediction line " + std::to_string(lineno));
        PredictionRecord r;
        r.text = line.substr(0, t1);
        std::string gold = line.substr(t1 + 1, t2 - t1 - 1);
        if (gold == "TRUE") r.gold = true;
        else if (gold == "FALSE") r.gold = false;
        else throw std::invalid_argument("bad gold label on line " + std::to_string(lineno));
        std::size_t used = 0;
        std::string probs = line.substr(t2 + 1);
        r.prob = std::stod(probs, &used);
        if (used != probs.size() || !(r.prob >= 0.0 && r.prob <= 1.0))
            throw std::invalid_argument("malformed probability on line " + std::to_string(lineno));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace subreg
