#ifndef DSCOH_EVAL_HPP
#define DSCOH_EVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "dscoh/errors.hpp"

namespace dscoh {

// Average ranks with ties (1-based).
inline std::vector<double> average_ranks(const std::vector<double>& x) {
    std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

// Spearman rank correlation: Pearson correlation of tie-averaged ranks.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw LengthMismatch("spearman inputs differ in length");
    if (x.size() < 2) throw DegenerateInput("spearman needs at least 2 points");
    std::vector<double> rx = average_ranks(x);
    std::vector<double> ry = average_ranks(y);
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateInput("spearman input has zero rank variance");
    return sxy / std::sqrt(sxx * syy);
}

// Document id -> cluster index, indices dense from 0.
struct Partition {
    std::map<std::string, int> labels;
};

namespace detail {

// Contingency table between two partitions over the same key set.
inline std::vector<std::vector<long long>> contingency(const Partition& p,
                                                       const Partition& truth) {
    if (p.labels.size() != truth.labels.size())
        throw KeyMismatch("partitions cover different key sets");
    int kp = 0, kt = 0;
    for (const auto& [key, c] : p.labels) {
        auto it = truth.labels.find(key);
        if (it == truth.labels.end())
            throw KeyMismatch("key '" + key + "' missing from truth partition");
        kp = std::max(kp, c + 1);
        kt = std::max(kt, it->second + 1);
    }
    std::vector<std::vector<long long>> table(static_cast<std::size_t>(kp),
                                              std::vector<long long>(static_cast<std::size_t>(kt), 0));
    for (const auto& [key, c] : p.labels)
        ++table[static_cast<std::size_t>(c)]
               [static_cast<std::size_t>(truth.labels.at(key))];
    return table;
}

inline double choose2(long long n) { return static_cast<double>(n) * (n - 1) / 2.0; }

}  // namespace detail

inline double adjusted_rand_index(const Partition& p, const Partition& truth) {
    auto table = detail::contingency(p, truth);
    long long n = 0;
    std::vector<long long> row_sums(table.size(), 0);
    std::vector<long long> col_sums(table.empty() ? 0 : table[0].size(), 0);
    double sum_cells = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j = 0; j < table[i].size(); ++j) {
            long long v = table[i][j];
            n += v;
            row_sums[i] += v;
            col_sums[j] += v;
            sum_cells += detail::choose2(v);
        }
    double sum_rows = 0.0, sum_cols = 0.0;
    for (long long r : row_sums) sum_rows += detail::choose2(r);
    for (long long c : col_sums) sum_cols += detail::choose2(c);
    double total = detail::choose2(n);
    double expected = total > 0.0 ? sum_rows * sum_cols / total : 0.0;
    double max_index = (sum_rows + sum_cols) / 2.0;
    if (max_index == expected) return 1.0;  // both partitions trivial
    return (sum_cells - expected) / (max_index - expected);
}

// NMI with arithmetic-mean normalization.  Two zero-entropy partitions score
// 1; one zero-entropy side scores 0.
inline double normalized_mutual_info(const Partition& p, const Partition& truth) {
    auto table = detail::contingency(p, truth);
    long long n = 0;
    std::vector<long long> row_sums(table.size(), 0);
    std::vector<long long> col_sums(table.empty() ? 0 : table[0].size(), 0);
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j = 0; j < table[i].size(); ++j) {
            n += table[i][j];
            row_sums[i] += table[i][j];
            col_sums[j] += table[i][j];
        }
    double dn = static_cast<double>(n);
    auto entropy = [dn](const std::vector<long long>& sums) {
        double h = 0.0;
        for (long long s : sums)
            if (s > 0) {
                double q = static_cast<double>(s) / dn;
                h -= q * std::log(q);
            }
        return h;
    };
    double hp = entropy(row_sums);
    double ht = entropy(col_sums);
    if (hp == 0.0 && ht == 0.0) return 1.0;
    if (hp == 0.0 || ht == 0.0) return 0.0;
    double mi = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j = 0; j < table[i].size(); ++j)
            if (table[i][j] > 0) {
                double pij = static_cast<double>(table[i][j]) / dn;
                double pi = static_cast<double>(row_sums[i]) / dn;
                double pj = static_cast<double>(col_sums[j]) / dn;
                mi += pij * std::log(pij / (pi * pj));
            }
    double nmi = mi / ((hp + ht) / 2.0);
    return std::clamp(nmi, 0.0, 1.0);
}

// Fowlkes-Mallows: TP / sqrt((TP+FP)(TP+FN)) over item pairs; 0/0 -> 0.
inline double fowlkes_mallows(const Partition& p, const Partition& truth) {
    auto table = detail::contingency(p, truth);
    std::vector<long long> row_sums(table.size(), 0);
    std::vector<long long> col_sums(table.empty() ? 0 : table[0].size(), 0);
    double tp = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j = 0; j < table[i].size(); ++j) {
            tp += detail::choose2(table[i][j]);
            row_sums[i] += table[i][j];
            col_sums[j] += table[i][j];
        }
    double pairs_p = 0.0, pairs_t = 0.0;
    for (long long r : row_sums) pairs_p += detail::choose2(r);
    for (long long c : col_sums) pairs_t += detail::choose2(c);
    if (pairs_p == 0.0 || pairs_t == 0.0) return 0.0;
    return tp / std::sqrt(pairs_p * pairs_t);
}

namespace detail {

// Cyclic Jacobi eigendecomposition of a symmetric matrix.  Sweeps until the
// off-diagonal Frobenius norm drops below tol.  Returns eigenvalues and the
// orthogonal matrix of column eigenvectors.
struct EigenResult {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;  // vectors[i][k]: component i of eigvec k
};

inline EigenResult jacobi_eigen(std::vector<std::vector<double>> a, double tol = 1e-10,
                                int max_sweeps = 100) {
    std::size_t n = a.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    auto off_norm = [&a, n]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i][j] * a[i][j];
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_norm() > tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    EigenResult res;
    res.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.values[i] = a[i][i];
    res.vectors = std::move(v);
    return res;
}

// Lloyd's k-means with k-means++ seeding; deterministic for a fixed seed.
inline std::vector<int> kmeans(const std::vector<std::vector<double>>& points, int k,
                               std::uint64_t seed, int max_iters = 300,
                               double tol = 1e-9) {
    std::size_t n = points.size();
    std::size_t dim = points.empty() ? 0 : points[0].size();
    std::mt19937_64 rng(seed);

    auto dist2 = [dim](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < dim; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return s;
    };

    // k-means++ seeding
    std::vector<std::vector<double>> centers;
    std::uniform_int_distribution<std::size_t> uni(0, n - 1);
    centers.push_back(points[uni(rng)]);
    std::vector<double> d2(n, 0.0);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = dist2(points[i], centers[0]);
            for (std::size_t c = 1; c < centers.size(); ++c)
                best = std::min(best, dist2(points[i], centers[c]));
            d2[i] = best;
            total += best;
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            std::uniform_real_distribution<double> ur(0.0, total);
            double r = ur(rng);
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= r) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = uni(rng);
        }
        centers.push_back(points[pick]);
    }

    std::vector<int> assign(n, 0);
    for (int iter = 0; iter < max_iters; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double bd = dist2(points[i], centers[0]);
            for (int c = 1; c < k; ++c) {
                double d = dist2(points[i], centers[static_cast<std::size_t>(c)]);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            assign[i] = best;
        }
        std::vector<std::vector<double>> next(static_cast<std::size_t>(k),
                                              std::vector<double>(dim, 0.0));
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[static_cast<std::size_t>(assign[i])];
            for (std::size_t d = 0; d < dim; ++d)
                next[static_cast<std::size_t>(assign[i])][d] += points[i][d];
        }
        double movement = 0.0;
        for (int c = 0; c < k; ++c) {
            auto uc = static_cast<std::size_t>(c);
            if (counts[uc] == 0) continue;  // keep empty-cluster center in place
            for (std::size_t d = 0; d < dim; ++d) next[uc][d] /= counts[uc];
            movement += std::sqrt(dist2(next[uc], centers[uc]));
            centers[uc] = next[uc];
        }
        if (movement < tol) break;
    }
    return assign;
}

}  // namespace detail

// Spectral clustering on a symmetric non-negative similarity matrix:
// normalized symmetric Laplacian, k smallest-eigenvalue eigenvectors
// (cyclic Jacobi), unit-normalized rows, k-means++ with the given seed.
inline std::vector<int> spectral_cluster(const std::vector<std::vector<double>>& sim,
                                         int k, std::uint64_t seed) {
    std::size_t n = sim.size();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw KTooLarge("k must be in [1, n]");
    for (std::size_t i = 0; i < n; ++i) {
        if (sim[i].size() != n) throw NotSymmetric("matrix is not square");
        for (std::size_t j = 0; j < n; ++j) {
            if (sim[i][j] < 0.0) throw NegativeEntry("similarity matrix has a negative entry");
            if (std::abs(sim[i][j] - sim[j][i]) > 1e-9)
                throw NotSymmetric("matrix is not symmetric");
        }
    }
    if (k == 1) return std::vector<int>(n, 0);

    // L = I - D^{-1/2} W D^{-1/2}; zero-degree rows keep D^{-1/2} = 0.
    std::vector<double> dinv(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double deg = std::accumulate(sim[i].begin(), sim[i].end(), 0.0);
        if (deg > 0.0) dinv[i] = 1.0 / std::sqrt(deg);
    }
    std::vector<std::vector<double>> lap(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            lap[i][j] = (i == j ? 1.0 : 0.0) - dinv[i] * sim[i][j] * dinv[j];

    detail::EigenResult eig = detail::jacobi_eigen(std::move(lap));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&eig](std::size_t a, std::size_t b) {
        return eig.values[a] < eig.values[b];
    });

    std::vector<std::vector<double>> embed(n, std::vector<double>(static_cast<std::size_t>(k), 0.0));
    for (int c = 0; c < k; ++c)
        for (std::size_t i = 0; i < n; ++i)
            embed[i][static_cast<std::size_t>(c)] = eig.vectors[i][order[static_cast<std::size_t>(c)]];
    for (auto& row : embed) {
        double norm = 0.0;
        for (double x : row) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 0.0)
            for (double& x : row) x /= norm;
    }

    std::vector<int> labels = detail::kmeans(embed, k, seed);

    // densify cluster indices
    std::map<int, int> remap;
    for (int& l : labels) {
        auto it = remap.find(l);
        if (it == remap.end()) it = remap.emplace(l, static_cast<int>(remap.size())).first;
        l = it->second;
    }
    return labels;
}

}  // namespace dscoh

#endif
