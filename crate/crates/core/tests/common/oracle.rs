//! De Casteljau on the unit sphere in 256-bit floating point, with
//! geodesics given by the closed-form slerp.

use astro_float::{BigFloat, Consts, RoundingMode};

const PRECISION: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

struct Ctx {
    consts: Consts,
}

impl Ctx {
    fn num(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, PRECISION)
    }

    fn dot(&self, a: &[BigFloat], b: &[BigFloat]) -> BigFloat {
        let mut s = self.num(0.0);
        for (x, y) in a.iter().zip(b) {
            s = s.add(&x.mul(y, PRECISION, RM), PRECISION, RM);
        }
        s
    }

    /// `sin((1-t)θ)/sin θ · a + sin(tθ)/sin θ · b` with `θ = acos<a, b>`.
    fn slerp(&mut self, a: &[BigFloat], b: &[BigFloat], t: &BigFloat) -> Vec<BigFloat> {
        let theta = self.dot(a, b).acos(PRECISION, RM, &mut self.consts);
        let one = self.num(1.0);
        let sin_theta = theta.sin(PRECISION, RM, &mut self.consts);
        let wa = one
            .sub(t, PRECISION, RM)
            .mul(&theta, PRECISION, RM)
            .sin(PRECISION, RM, &mut self.consts)
            .div(&sin_theta, PRECISION, RM);
        let wb = t
            .mul(&theta, PRECISION, RM)
            .sin(PRECISION, RM, &mut self.consts)
            .div(&sin_theta, PRECISION, RM);
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                x.mul(&wa, PRECISION, RM)
                    .add(&y.mul(&wb, PRECISION, RM), PRECISION, RM)
            })
            .collect()
    }
}

fn to_f64(x: &BigFloat) -> f64 {
    x.to_string().parse().expect("decimal output")
}

/// Control points are given as `f64` coordinates on the unit sphere and are
/// renormalized in extended precision; `t = num / den`.
pub fn sphere_bezier(control: &[[f64; 3]], num: u32, den: u32) -> [f64; 3] {
    let mut ctx = Ctx {
        consts: Consts::new().expect("constants cache"),
    };
    let t = ctx.num(num as f64).div(&ctx.num(den as f64), PRECISION, RM);
    let mut level: Vec<Vec<BigFloat>> = control
        .iter()
        .map(|c| {
            let v: Vec<BigFloat> = c.iter().map(|x| ctx.num(*x)).collect();
            let n = ctx.dot(&v, &v).sqrt(PRECISION, RM);
            v.iter().map(|x| x.div(&n, PRECISION, RM)).collect()
        })
        .collect();
    while level.len() > 1 {
        level = (0..level.len() - 1)
            .map(|i| ctx.slerp(&level[i], &level[i + 1], &t))
            .collect();
    }
    let p = &level[0];
    [to_f64(&p[0]), to_f64(&p[1]), to_f64(&p[2])]
}
