#ifndef FUCHSNF_NUMERIC_PATH_HPP
#define FUCHSNF_NUMERIC_PATH_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "../errors.hpp"
#include "../hom_vec_poly.hpp"

namespace fuchsnf::numeric
{

struct LineSegment {
    Complex from;
    Complex to;
};

// center + radius * exp(i theta), theta from theta0 to theta1 (signed sweep).
struct ArcSegment {
    Complex center;
    double radius = 0.5;
    double theta0 = 0.0;
    double theta1 = 2.0 * std::numbers::pi;
};

using Segment = std::variant<LineSegment, ArcSegment>;

inline Complex point_at(const Segment &seg, double s)
{
    if (const auto *l = std::get_if<LineSegment>(&seg)) {
        return l->from + s * (l->to - l->from);
    }
    const auto &a = std::get<ArcSegment>(seg);
    return a.center + a.radius * std::polar(1.0, a.theta0 + s * (a.theta1 - a.theta0));
}

// dz/ds for s in [0, 1].
inline Complex tangent_at(const Segment &seg, double s)
{
    if (const auto *l = std::get_if<LineSegment>(&seg)) {
        return l->to - l->from;
    }
    const auto &a = std::get<ArcSegment>(seg);
    const double sweep = a.theta1 - a.theta0;
    return Complex(0.0, sweep) * a.radius * std::polar(1.0, a.theta0 + s * sweep);
}

inline double distance_to(const Segment &seg, Complex p)
{
    if (const auto *l = std::get_if<LineSegment>(&seg)) {
        const Complex dir = l->to - l->from;
        const double len2 = std::norm(dir);
        if (len2 == 0.0) {
            return std::abs(p - l->from);
        }
        const double s = std::clamp(std::real((p - l->from) * std::conj(dir)) / len2, 0.0, 1.0);
        return std::abs(p - (l->from + s * dir));
    }
    const auto &a = std::get<ArcSegment>(seg);
    const double sweep = a.theta1 - a.theta0;
    const double rel = std::abs(p - a.center);
    if (std::abs(sweep) >= 2.0 * std::numbers::pi) {
        return std::abs(rel - a.radius);
    }
    // angle of p measured along the sweep direction from theta0
    const double phi = std::arg(p - a.center);
    double along = (sweep >= 0.0 ? phi - a.theta0 : a.theta0 - phi);
    along = std::fmod(along, 2.0 * std::numbers::pi);
    if (along < 0.0) {
        along += 2.0 * std::numbers::pi;
    }
    if (along <= std::abs(sweep)) {
        return std::abs(rel - a.radius);
    }
    return std::min(std::abs(p - point_at(seg, 0.0)), std::abs(p - point_at(seg, 1.0)));
}

enum class LoopAround { minus_one, plus_one, both };

// Piecewise path in the x-plane avoiding the singular points +1 and -1.
class PathSpec
{
public:
    PathSpec() = default;

    PathSpec(std::vector<Segment> segments, double clearance) : segments_(std::move(segments)), clearance_(clearance)
    {
        validate();
    }

    static PathSpec polyline(const std::vector<Complex> &points, double clearance = 0.1)
    {
        std::vector<Segment> segs;
        for (std::size_t i = 1; i < points.size(); ++i) {
            segs.emplace_back(LineSegment{points[i - 1], points[i]});
        }
        PathSpec p(std::move(segs), clearance);
        if (!points.empty()) {
            p.start_ = points.front();
        }
        return p;
    }

    // Closed loop from `base` around the chosen singular points,
    // counterclockwise when `counterclockwise` is set.
    static PathSpec loop(LoopAround which, double radius = 0.5, bool counterclockwise = true,
                         double clearance = 0.1, Complex base = 0.0)
    {
        const double turn = counterclockwise ? 2.0 * std::numbers::pi : -2.0 * std::numbers::pi;
        std::vector<Segment> segs;
        switch (which) {
        case LoopAround::minus_one: {
            const Complex entry(-1.0 + radius, 0.0);
            segs.emplace_back(LineSegment{base, entry});
            segs.emplace_back(ArcSegment{Complex(-1.0), radius, 0.0, turn});
            segs.emplace_back(LineSegment{entry, base});
            break;
        }
        case LoopAround::plus_one: {
            const Complex entry(1.0 - radius, 0.0);
            segs.emplace_back(LineSegment{base, entry});
            segs.emplace_back(ArcSegment{Complex(1.0), radius, std::numbers::pi, std::numbers::pi + turn});
            segs.emplace_back(LineSegment{entry, base});
            break;
        }
        case LoopAround::both: {
            const double big = 1.0 + 2.0 * radius;
            const Complex entry(0.0, big);
            segs.emplace_back(LineSegment{base, entry});
            segs.emplace_back(ArcSegment{Complex(0.0), big, std::numbers::pi / 2, std::numbers::pi / 2 + turn});
            segs.emplace_back(LineSegment{entry, base});
            break;
        }
        }
        PathSpec p(std::move(segs), clearance);
        p.start_ = base;
        return p;
    }

    // This path followed by `next`.
    PathSpec then(const PathSpec &next) const
    {
        std::vector<Segment> segs = segments_;
        segs.insert(segs.end(), next.segments_.begin(), next.segments_.end());
        PathSpec p(std::move(segs), std::min(clearance_, next.clearance_));
        p.start_ = start();
        return p;
    }

    const std::vector<Segment> &segments() const noexcept
    {
        return segments_;
    }

    double clearance() const noexcept
    {
        return clearance_;
    }

    Complex start() const
    {
        return segments_.empty() ? start_ : point_at(segments_.front(), 0.0);
    }

    Complex end() const
    {
        return segments_.empty() ? start_ : point_at(segments_.back(), 1.0);
    }

    bool closed() const
    {
        return std::abs(end() - start()) < 1e-14;
    }

    // Smallest distance from the path to either singular point.
    double min_distance_to_singularities() const
    {
        double r = std::min(std::abs(start_ - 1.0), std::abs(start_ + 1.0));
        if (!segments_.empty()) {
            r = std::numeric_limits<double>::infinity();
        }
        for (const auto &s : segments_) {
            r = std::min({r, distance_to(s, Complex(1.0)), distance_to(s, Complex(-1.0))});
        }
        return r;
    }

private:
    void validate() const
    {
        if (!(clearance_ > 0.0)) {
            throw InvalidSystem("PathSpec: clearance must be positive");
        }
        for (std::size_t i = 1; i < segments_.size(); ++i) {
            if (std::abs(point_at(segments_[i - 1], 1.0) - point_at(segments_[i], 0.0)) > 1e-12) {
                throw InvalidSystem("PathSpec: segments are not contiguous");
            }
        }
        const double dist = min_distance_to_singularities();
        if (dist < clearance_) {
            throw InvalidSystem("PathSpec: path passes within " + std::to_string(dist)
                                + " of a singular point (clearance " + std::to_string(clearance_) + ")");
        }
    }

    std::vector<Segment> segments_;
    double clearance_ = 0.1;
    Complex start_ = 0.0;
};

} // namespace fuchsnf::numeric

#endif
