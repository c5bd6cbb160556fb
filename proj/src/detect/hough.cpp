#include <lmsline/detect/hough.hpp>
#include <lmsline/error.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

namespace lmsline::detect {

void HoughParams::validate() const {
    if (!(deltaRho > 0.0) || !(deltaThetaDeg > 0.0)) {
        throw InvalidInput("Hough bin sizes must be positive");
    }
    if (width <= 0 || height <= 0) throw InvalidInput("Hough image size must be positive");
}

double HoughParams::diagonal() const { return std::hypot(double(width), double(height)); }

int HoughParams::rho_bins() const {
    return std::max(1, static_cast<int>(std::ceil(2.0 * diagonal() / deltaRho)));
}

int HoughParams::theta_bins() const {
    return std::max(1, static_cast<int>(std::ceil(180.0 / deltaThetaDeg)));
}

double HoughParams::theta_center_deg(int thetaBin) const { return (thetaBin + 0.5) * deltaThetaDeg; }

double HoughParams::rho_center(int rhoBin) const { return -diagonal() + (rhoBin + 0.5) * deltaRho; }

int HoughParams::rho_bin(double rho) const {
    const auto bin = static_cast<long>(std::floor((rho + diagonal()) / deltaRho));
    return static_cast<int>(std::clamp<long>(bin, 0, rho_bins() - 1));
}

std::uint64_t HoughAccumulator::total_votes() const {
    return std::accumulate(votes.begin(), votes.end(), std::uint64_t{0});
}

int HoughAccumulator::vote_bin(const core::Point2& p, int thetaBin) const {
    return params.rho_bin(p.x * cosTable[thetaBin] + p.y * sinTable[thetaBin]);
}

HoughAccumulator hough_vote(std::span<const core::Point2> points, const HoughParams& params,
                            std::size_t workers) {
    params.validate();
    HoughAccumulator acc;
    acc.params = params;
    acc.rhoBins = params.rho_bins();
    acc.thetaBins = params.theta_bins();
    acc.votes.assign(static_cast<std::size_t>(acc.rhoBins) * acc.thetaBins, 0);
    for (int t = 0; t < acc.thetaBins; ++t) {
        const double theta = params.theta_center_deg(t) * std::numbers::pi / 180.0;
        acc.cosTable.push_back(std::cos(theta));
        acc.sinTable.push_back(std::sin(theta));
    }

    auto vote_range = [&acc, points](std::size_t begin, std::size_t end,
                                     std::vector<std::uint32_t>& into) {
        for (std::size_t k = begin; k < end; ++k) {
            for (int t = 0; t < acc.thetaBins; ++t) {
                ++into[static_cast<std::size_t>(acc.vote_bin(points[k], t)) * acc.thetaBins + t];
            }
        }
    };

    workers = std::max<std::size_t>(1, std::min(workers, points.size()));
    if (workers == 1) {
        vote_range(0, points.size(), acc.votes);
        return acc;
    }
    std::vector<std::vector<std::uint32_t>> partial(workers,
                                                    std::vector<std::uint32_t>(acc.votes.size(), 0));
    {
        std::vector<std::jthread> threads;
        const std::size_t step = (points.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(points.size(), w * step);
            const std::size_t end = std::min(points.size(), begin + step);
            threads.emplace_back([&, w, begin, end] { vote_range(begin, end, partial[w]); });
        }
    }
    for (const auto& part : partial) {
        for (std::size_t k = 0; k < part.size(); ++k) acc.votes[k] += part[k];
    }
    return acc;
}

std::vector<Peak> find_peaks(const HoughAccumulator& acc, std::size_t maxPeaks,
                             std::uint32_t minVotes) {
    if (maxPeaks < 1) throw InvalidInput("maxPeaks must be at least 1");
    const std::uint32_t floorVotes = std::max<std::uint32_t>(1, minVotes);
    std::vector<Peak> peaks;
    for (int r = 0; r < acc.rhoBins; ++r) {
        for (int t = 0; t < acc.thetaBins; ++t) {
            const std::uint32_t v = acc.at(r, t);
            if (v < floorVotes) continue;
            bool isPeak = true;
            for (int dr = -1; dr <= 1 && isPeak; ++dr) {
                for (int dt = -1; dt <= 1; ++dt) {
                    if (dr == 0 && dt == 0) continue;
                    const int rr = r + dr;
                    const int tt = t + dt;
                    if (rr < 0 || tt < 0 || rr >= acc.rhoBins || tt >= acc.thetaBins) continue;
                    const std::uint32_t nv = acc.at(rr, tt);
                    const bool earlier = dr < 0 || (dr == 0 && dt < 0);
                    if (nv > v || (earlier && nv == v)) {
                        isPeak = false;
                        break;
                    }
                }
            }
            if (isPeak) {
                peaks.push_back({r, t, v, acc.params.rho_center(r), acc.params.theta_center_deg(t)});
            }
        }
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const Peak& a, const Peak& b) { return a.votes > b.votes; });
    if (peaks.size() > maxPeaks) peaks.resize(maxPeaks);
    return peaks;
}

std::vector<core::Point2> supporting_points(std::span<const core::Point2> points, const Peak& peak,
                                            const HoughAccumulator& acc) {
    std::vector<core::Point2> support;
    for (const auto& p : points) {
        if (acc.vote_bin(p, peak.thetaBin) == peak.rhoBin) support.push_back(p);
    }
    return support;
}

}  // namespace lmsline::detect
