//! Dormand–Prince 8(5,3) with Hairer's step control, for small complex
//! systems. Used as an independent oracle for the series solutions and to
//! carry Jost solutions inward at large spectral index.

#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};
use crate::C64;

const C2: f64 = 0.526001519587677318785587544488e-01;
const C3: f64 = 0.789002279381515978178381316732e-01;
const C4: f64 = 0.118350341907227396726757197510;
const C5: f64 = 0.281649658092772603273242802490;
const C6: f64 = 0.333333333333333333333333333333;
const C7: f64 = 0.25;
const C8: f64 = 0.307692307692307692307692307692;
const C9: f64 = 0.651282051282051282051282051282;
const C10: f64 = 0.6;
const C11: f64 = 0.857142857142857142857142857142;

const A21: f64 = 5.26001519587677318785587544488e-02;
const A31: f64 = 1.97250569845378994544595329183e-02;
const A32: f64 = 5.91751709536136983633785987549e-02;
const A41: f64 = 2.95875854768068491816892993775e-02;
const A43: f64 = 8.87627564304205475450678981324e-02;
const A51: f64 = 2.41365134159266685502369798665e-01;
const A53: f64 = -8.84549479328286085344864962717e-01;
const A54: f64 = 9.24834003261792003115737966543e-01;
const A61: f64 = 3.70370370370370370370370370370e-02;
const A64: f64 = 1.70828608729473871279604482173e-01;
const A65: f64 = 1.25467687566822425016691814123e-01;
const A71: f64 = 3.71093750000000000000000000000e-02;
const A74: f64 = 1.70252211019544039314978060272e-01;
const A75: f64 = 6.02165389804559606850219397283e-02;
const A76: f64 = -1.75781250000000000000000000000e-02;
const A81: f64 = 3.70920001185047927108779319836e-02;
const A84: f64 = 1.70383925712239993810214054705e-01;
const A85: f64 = 1.07262030446373284651809199168e-01;
const A86: f64 = -1.53194377486244017527936158236e-02;
const A87: f64 = 8.27378916381402288758473766002e-03;
const A91: f64 = 6.24110958716075717114429577812e-01;
const A94: f64 = -3.36089262944694129406857109825e+00;
const A95: f64 = -8.68219346841726006818189891453e-01;
const A96: f64 = 2.75920996994467083049415600797e+01;
const A97: f64 = 2.01540675504778934086186788979e+01;
const A98: f64 = -4.34898841810699588477366255144e+01;
const A101: f64 = 4.77662536438264365890433908527e-01;
const A104: f64 = -2.48811461997166764192642586468e+00;
const A105: f64 = -5.90290826836842996371446475743e-01;
const A106: f64 = 2.12300514481811942347288949897e+01;
const A107: f64 = 1.52792336328824235832596922938e+01;
const A108: f64 = -3.32882109689848629194453265587e+01;
const A109: f64 = -2.03312017085086261358222928593e-02;
const A111: f64 = -9.37142430085987325717040528057e-01;
const A114: f64 = 5.18637242884406370830023853209e+00;
const A115: f64 = 1.09143734899672957818500254654e+00;
const A116: f64 = -8.14978701074692612513997267357e+00;
const A117: f64 = -1.85200656599969598641566180701e+01;
const A118: f64 = 2.27394870993505042818970056734e+01;
const A119: f64 = 2.49360555267965238987089396762e+00;
const A1110: f64 = -3.04676447189821950038236690220e+00;
const A121: f64 = 2.27331014751653820792359768449e+00;
const A124: f64 = -1.05344954667372501984066689879e+01;
const A125: f64 = -2.00087205822486249909675718444e+00;
const A126: f64 = -1.79589318631187989172765950534e+01;
const A127: f64 = 2.79488845294199600508499808837e+01;
const A128: f64 = -2.85899827713502369474065508674e+00;
const A129: f64 = -8.87285693353062954433549289258e+00;
const A1210: f64 = 1.23605671757943030647266201528e+01;
const A1211: f64 = 6.43392746015763530355970484046e-01;

const B1: f64 = 5.42937341165687622380535766363e-02;
const B6: f64 = 4.45031289275240888144113950566e+00;
const B7: f64 = 1.89151789931450038304281599044e+00;
const B8: f64 = -5.80120396001058478146721142270e+00;
const B9: f64 = 3.11164366957819894408916062370e-01;
const B10: f64 = -1.52160949662516078556178806805e-01;
const B11: f64 = 2.01365400804030348374776537501e-01;
const B12: f64 = 4.47106157277725905176885569043e-02;

const E1: f64 = 0.1312004499419488073250102996e-01;
const E6: f64 = -0.1225156446376204440720569753e+01;
const E7: f64 = -0.4957589496572501915214079952e+00;
const E8: f64 = 0.1664377182454986536961530415e+01;
const E9: f64 = -0.3503288487499736816886487290e+00;
const E10: f64 = 0.3341791187130174790297318841e+00;
const E11: f64 = 0.8192320648511571246570742613e-01;
const E12: f64 = -0.2235530786388629525884427845e-01;

const BHH1: f64 = 0.244094488188976377952755905512;
const BHH2: f64 = 0.733846688281611857341361741547;
const BHH3: f64 = 0.220588235294117647058823529412e-01;

const SAFETY: f64 = 0.9;
/// Bounds on h_old/h_new.
const FAC_MIN: f64 = 1.0 / 6.0;
const FAC_MAX: f64 = 1.0 / 0.333;

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Largest allowed |h|.
    pub max_step: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rtol: 1e-11, atol: 1e-14, max_steps: 200_000, max_step: f64::INFINITY }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

type State<const N: usize> = [C64; N];

fn axpy<const N: usize>(y: &State<N>, terms: &[(f64, &State<N>)], h: f64) -> State<N> {
    let mut out = *y;
    for (c, k) in terms {
        let ch = c * h;
        for i in 0..N {
            out[i] += k[i] * ch;
        }
    }
    out
}

struct Stepper<'a, const N: usize, F: Fn(f64, &State<N>) -> State<N>> {
    rhs: &'a F,
    opts: OdeOptions,
    stats: OdeStats,
}

impl<'a, const N: usize, F: Fn(f64, &State<N>) -> State<N>> Stepper<'a, N, F> {
    /// One DOP853 step; returns the 8th-order update and the scaled error.
    fn attempt(&mut self, x: f64, y: &State<N>, k1: &State<N>, h: f64) -> (State<N>, State<N>, f64) {
        let f = self.rhs;
        let k2 = f(x + C2 * h, &axpy(y, &[(A21, k1)], h));
        let k3 = f(x + C3 * h, &axpy(y, &[(A31, k1), (A32, &k2)], h));
        let k4 = f(x + C4 * h, &axpy(y, &[(A41, k1), (A43, &k3)], h));
        let k5 = f(x + C5 * h, &axpy(y, &[(A51, k1), (A53, &k3), (A54, &k4)], h));
        let k6 = f(x + C6 * h, &axpy(y, &[(A61, k1), (A64, &k4), (A65, &k5)], h));
        let k7 = f(x + C7 * h, &axpy(y, &[(A71, k1), (A74, &k4), (A75, &k5), (A76, &k6)], h));
        let k8 = f(x + C8 * h, &axpy(y, &[(A81, k1), (A84, &k4), (A85, &k5), (A86, &k6), (A87, &k7)], h));
        let k9 = f(x + C9 * h, &axpy(y, &[(A91, k1), (A94, &k4), (A95, &k5), (A96, &k6), (A97, &k7), (A98, &k8)], h));
        let k10 = f(
            x + C10 * h,
            &axpy(y, &[(A101, k1), (A104, &k4), (A105, &k5), (A106, &k6), (A107, &k7), (A108, &k8), (A109, &k9)], h),
        );
        let k11 = f(
            x + C11 * h,
            &axpy(
                y,
                &[(A111, k1), (A114, &k4), (A115, &k5), (A116, &k6), (A117, &k7), (A118, &k8), (A119, &k9), (A1110, &k10)],
                h,
            ),
        );
        let k12 = f(
            x + h,
            &axpy(
                y,
                &[
                    (A121, k1),
                    (A124, &k4),
                    (A125, &k5),
                    (A126, &k6),
                    (A127, &k7),
                    (A128, &k8),
                    (A129, &k9),
                    (A1210, &k10),
                    (A1211, &k11),
                ],
                h,
            ),
        );
        self.stats.evaluations += 11;
        let mut incr = [C64::new(0.0, 0.0); N];
        for i in 0..N {
            incr[i] = k1[i] * B1 + k6[i] * B6 + k7[i] * B7 + k8[i] * B8 + k9[i] * B9 + k10[i] * B10 + k11[i] * B11 + k12[i] * B12;
        }
        let y_new = axpy(y, &[(1.0, &incr)], h);
        let mut err = 0.0;
        let mut err2 = 0.0;
        for i in 0..N {
            let sk = self.opts.atol + self.opts.rtol * y[i].norm().max(y_new[i].norm());
            let e2 = incr[i] - k1[i] * BHH1 - k9[i] * BHH2 - k12[i] * BHH3;
            err2 += (e2.norm() / sk).powi(2);
            let e5 = k1[i] * E1 + k6[i] * E6 + k7[i] * E7 + k8[i] * E8 + k9[i] * E9 + k10[i] * E10 + k11[i] * E11 + k12[i] * E12;
            err += (e5.norm() / sk).powi(2);
        }
        let mut deno = err + 0.01 * err2;
        if deno <= 0.0 {
            deno = 1.0;
        }
        let scaled = h.abs() * err * (1.0 / (deno * N as f64)).sqrt();
        let k_new = f(x + h, &y_new);
        self.stats.evaluations += 1;
        (y_new, k_new, scaled)
    }

    fn initial_step(&mut self, x: f64, y: &State<N>, k1: &State<N>, span: f64) -> f64 {
        let mut d0 = 0.0;
        let mut d1 = 0.0;
        for i in 0..N {
            let sk = self.opts.atol + self.opts.rtol * y[i].norm();
            d0 += (y[i].norm() / sk).powi(2);
            d1 += (k1[i].norm() / sk).powi(2);
        }
        let h = if d0 < 1e-10 || d1 < 1e-10 { 1e-6 } else { 0.01 * (d0 / d1).sqrt() };
        let _ = x;
        h.min(span.abs()).min(self.opts.max_step)
    }
}

/// Integrates y′ = rhs(x, y) from `x0` through every node of `nodes`
/// (monotone in the direction of travel), returning the state at each.
/// Steps are clipped so every node is hit exactly.
pub fn integrate_to_nodes<const N: usize, F>(
    rhs: &F,
    x0: f64,
    y0: State<N>,
    nodes: &[f64],
    opts: OdeOptions,
) -> Result<(Vec<State<N>>, OdeStats)>
where
    F: Fn(f64, &State<N>) -> State<N>,
{
    let mut stepper = Stepper { rhs, opts, stats: OdeStats::default() };
    let mut out = Vec::with_capacity(nodes.len());
    let mut x = x0;
    let mut y = y0;
    let mut k1 = rhs(x, &y);
    stepper.stats.evaluations += 1;
    let mut h = f64::NAN;
    for &target in nodes {
        let span = target - x;
        if span == 0.0 {
            out.push(y);
            continue;
        }
        let dir = span.signum();
        if h.is_nan() {
            h = stepper.initial_step(x, &y, &k1, span);
        }
        let mut h_abs = h.abs();
        loop {
            let remaining = target - x;
            if remaining * dir <= 0.0 {
                break;
            }
            let last = h_abs >= remaining.abs();
            let step = if last { remaining } else { dir * h_abs };
            let (y_new, k_new, err) = stepper.attempt(x, &y, &k1, step);
            if !err.is_finite() || y_new.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
                h_abs *= 0.25;
                stepper.stats.rejected += 1;
                if h_abs < 1e-14 * (1.0 + x.abs()) {
                    return Err(Error::StepFailure(format!("non-finite state near x = {x}")));
                }
                continue;
            }
            let fac = (err.powf(0.125) / SAFETY).clamp(FAC_MIN, FAC_MAX);
            let proposed = (step.abs() / fac).min(opts.max_step);
            if err <= 1.0 {
                stepper.stats.accepted += 1;
                x = if last { target } else { x + step };
                y = y_new;
                k1 = k_new;
                // A clipped final step says nothing about the next step size.
                if !last || proposed < h_abs {
                    h_abs = proposed;
                }
            } else {
                stepper.stats.rejected += 1;
                h_abs = (step.abs() / (err.powf(0.125) / SAFETY).min(FAC_MAX)).min(opts.max_step);
            }
            if stepper.stats.accepted + stepper.stats.rejected > opts.max_steps {
                return Err(Error::StepFailure(format!("step budget {} exhausted at x = {x}", opts.max_steps)));
            }
            if h_abs < 1e-14 * (1.0 + x.abs()) {
                return Err(Error::StepFailure(format!("step size underflow at x = {x}")));
            }
        }
        h = h_abs;
        out.push(y);
    }
    Ok((out, stepper.stats))
}

/// Integrates from `x0` to `x1`.
pub fn integrate<const N: usize, F>(rhs: &F, x0: f64, y0: State<N>, x1: f64, opts: OdeOptions) -> Result<(State<N>, OdeStats)>
where
    F: Fn(f64, &State<N>) -> State<N>,
{
    let (mut ys, stats) = integrate_to_nodes(rhs, x0, y0, &[x1], opts)?;
    Ok((ys.pop().expect("one node requested"), stats))
}
