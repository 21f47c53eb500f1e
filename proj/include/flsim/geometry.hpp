#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace flsim {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(const Vec3& a, double s) { return s * a; }
inline Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
inline Vec3& operator+=(Vec3& a, const Vec3& b) { a = a + b; return a; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y,
            a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    if (n == 0.0) throw std::invalid_argument("normalized: zero-length vector");
    return a / n;
}

/// Range/azimuth/elevation triple. Azimuth theta is measured in the x-y
/// plane from +x, elevation phi from the x-y plane toward +z; this
/// convention is shared by every module.
struct SphericalPoint {
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

struct PlanePoint {
    double x = 0.0;
    double y = 0.0;
};

inline Vec3 spherical_to_cartesian(const SphericalPoint& p) {
    const double c = std::cos(p.phi);
    return {p.r * c * std::cos(p.theta),
            p.r * c * std::sin(p.theta),
            p.r * std::sin(p.phi)};
}

/// Inverse of spherical_to_cartesian. Theta at the pole (x = y = 0) is 0.
inline SphericalPoint cartesian_to_spherical(const Vec3& p) {
    const double r = norm(p);
    if (r == 0.0) throw std::invalid_argument("cartesian_to_spherical: zero-length input");
    return {r, std::atan2(p.y, p.x), std::atan2(p.z, std::hypot(p.x, p.y))};
}

inline PlanePoint polar_to_plane(double r, double theta) {
    return {r * std::cos(theta), r * std::sin(theta)};
}

/// Plane {x : dot(normal, x) = offset} with unit normal. offset is the
/// signed distance from the origin to the plane along the normal.
struct Plane {
    Vec3 normal {0.0, 0.0, 1.0};
    double offset = 0.0;

    double signed_distance(const Vec3& p) const { return dot(normal, p) - offset; }

    void validate() const {
        if (std::abs(norm(normal) - 1.0) > 1e-12)
            throw std::invalid_argument("Plane: normal must be unit length");
    }
};

inline Vec3 mirror_across_plane(const Vec3& p, const Plane& g) {
    return p - 2.0 * g.signed_distance(p) * g.normal;
}

/// Mirror of a direction vector (no translation part).
inline Vec3 mirror_direction(const Vec3& d, const Plane& g) {
    return d - 2.0 * dot(g.normal, d) * g.normal;
}

/// Row-major 3x3 matrix, just enough for rigid transforms.
struct Mat3 {
    std::array<double, 9> m {1, 0, 0, 0, 1, 0, 0, 0, 1};

    double operator()(int r, int c) const { return m[3 * r + c]; }
    double& operator()(int r, int c) { return m[3 * r + c]; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double determinant() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7])
             - m[1] * (m[3] * m[8] - m[5] * m[6])
             + m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
};

inline Mat3 rotation_x(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{1, 0, 0, 0, c, -s, 0, s, c}};
}

inline Mat3 rotation_y(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{c, 0, s, 0, 1, 0, -s, 0, c}};
}

inline Mat3 rotation_z(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{c, -s, 0, s, c, 0, 0, 0, 1}};
}

/// Rz(yaw) * Ry(pitch) * Rx(roll). With z up and the boresight along +x,
/// positive pitch tilts the boresight below the horizon.
inline Mat3 rotation_rpy(double roll, double pitch, double yaw) {
    return rotation_z(yaw) * rotation_y(pitch) * rotation_x(roll);
}

struct RigidPose {
    Mat3 rotation;
    Vec3 translation;

    Vec3 to_world(const Vec3& local) const { return rotation * local + translation; }
    Vec3 to_local(const Vec3& world) const { return rotation.transposed() * (world - translation); }
    Vec3 rotate(const Vec3& v) const { return rotation * v; }

    static RigidPose from_rpy(const Vec3& position, double roll, double pitch, double yaw) {
        return {rotation_rpy(roll, pitch, yaw), position};
    }

    void validate() const {
        const Mat3 rtr = rotation.transposed() * rotation;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double expect = (i == j) ? 1.0 : 0.0;
                if (std::abs(rtr(i, j) - expect) > 1e-9)
                    throw std::invalid_argument("RigidPose: rotation is not orthonormal");
            }
        if (std::abs(rotation.determinant() - 1.0) > 1e-9)
            throw std::invalid_argument("RigidPose: rotation determinant is not +1");
    }
};

}  // namespace flsim
