//! Small fixed-size vector and matrix helpers.

pub type Vec3 = [f64; 3];

#[inline]
pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    dot(&cross(a, b), c)
}

#[inline]
pub fn norm(a: &Vec3) -> f64 {
    libm::sqrt(dot(a, a))
}

#[inline]
pub fn scale(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Unit vector along `a`, or `None` when `a` vanishes.
pub fn normalize(a: &Vec3) -> Option<Vec3> {
    let n = norm(a);
    if n > 0.0 && n.is_finite() {
        Some(scale(a, 1.0 / n))
    } else {
        None
    }
}

/// Signed angle from `a` to `b` measured around `axis`.
pub fn signed_angle(a: &Vec3, b: &Vec3, axis: &Vec3) -> f64 {
    libm::atan2(det3(a, b, axis), dot(a, b))
}

/// Unsigned angle between two vectors, accurate near 0 and π.
pub fn angle(a: &Vec3, b: &Vec3) -> f64 {
    libm::atan2(norm(&cross(a, b)), dot(a, b))
}

/// Row-major 3×3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn diag(d: [f64; 3]) -> Mat3 {
        Mat3([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    pub fn from_rows(r0: Vec3, r1: Vec3, r2: Vec3) -> Mat3 {
        Mat3([r0, r1, r2])
    }

    /// Rotation by `angle` about the unit vector `axis` (Rodrigues).
    pub fn rotation(axis: &Vec3, angle: f64) -> Mat3 {
        let k = normalize(axis).unwrap_or([0.0, 0.0, 1.0]);
        let (s, c) = (libm::sin(angle), libm::cos(angle));
        let t = 1.0 - c;
        let [x, y, z] = k;
        Mat3([
            [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
            [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
            [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
        ])
    }

    pub fn row(&self, i: usize) -> Vec3 {
        self.0[i]
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        [dot(&self.0[0], v), dot(&self.0[1], v), dot(&self.0[2], v)]
    }

    pub fn mul(&self, rhs: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Mat3(out)
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn det(&self) -> f64 {
        det3(&self.0[0], &self.0[1], &self.0[2])
    }

    /// Max-norm of `AᵀA − I`.
    pub fn orthogonality_residual(&self) -> f64 {
        let p = self.transpose().mul(self);
        let mut r: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                r = r.max((p.0[i][j] - e).abs());
            }
        }
        r
    }
}
