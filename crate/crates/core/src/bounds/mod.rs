//! Computable constants controlling the decision procedures.
//!
//! Every constant is a function of the hyperbolicity constant `delta`, the
//! number of generators `sharp_s` and some input lengths. Two evaluation
//! paths exist:
//!
//! * [`Path::FreeExact`] (the default when `delta = 0`) uses exact free-group
//!   values for the primitive ingredients: quasi-geodesic parameters, the
//!   neighbourhood radius `mu`, the axis radius `r`, shortest-conjugator
//!   lengths, free-subgroup powers and root-freeness thresholds.
//! * [`Path::Assembled`] uses conservative closed forms for ingredients that
//!   only have existence proofs. Those nodes carry `Provenance::Assembled`.
//!
//! Both paths share the assembly of the higher constants (`f1`, `f2`,
//! `hbar`, `M`, `C`, `L`, `C_main`). Any constant may be overridden; the
//! override replaces that function for every argument and flows into all
//! dependents.

pub mod magnitude;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

pub use magnitude::Magnitude;

use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("delta must be nonnegative")]
    NegativeDelta,
    #[error("the generating set must be nonempty")]
    EmptyGeneratingSet,
    #[error("length argument must be at least 1")]
    ZeroLength,
    #[error("unknown constant {0:?}")]
    UnknownConstant(String),
    #[error("unknown cancellation mode {0:?}")]
    UnknownMode(String),
    #[error("constant {0} has no closed form for delta > 0; supply an override")]
    MissingOverride(ConstName),
}

/// Names of the overridable constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ConstName {
    Lambda,
    Epsilon,
    Conj,
    QuasiRadius,
    Mu,
    R,
    F1,
    F2,
    Hbar,
    LengthDefect,
    M,
    CCyclic,
    LTwo,
    FreePower,
    MinasyanK0,
    CMain,
}

impl ConstName {
    pub const ALL: [ConstName; 16] = [
        ConstName::Lambda,
        ConstName::Epsilon,
        ConstName::Conj,
        ConstName::QuasiRadius,
        ConstName::Mu,
        ConstName::R,
        ConstName::F1,
        ConstName::F2,
        ConstName::Hbar,
        ConstName::LengthDefect,
        ConstName::M,
        ConstName::CCyclic,
        ConstName::LTwo,
        ConstName::FreePower,
        ConstName::MinasyanK0,
        ConstName::CMain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstName::Lambda => "lambda",
            ConstName::Epsilon => "epsilon",
            ConstName::Conj => "conj",
            ConstName::QuasiRadius => "R",
            ConstName::Mu => "mu",
            ConstName::R => "r",
            ConstName::F1 => "f1",
            ConstName::F2 => "f2",
            ConstName::Hbar => "hbar",
            ConstName::LengthDefect => "f",
            ConstName::M => "M",
            ConstName::CCyclic => "C_cyclic",
            ConstName::LTwo => "L_two",
            ConstName::FreePower => "free_power",
            ConstName::MinasyanK0 => "minasyan_k0",
            ConstName::CMain => "C_main",
        }
    }
}

impl fmt::Display for ConstName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstName {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConstName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| BoundsError::UnknownConstant(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// A formula taken verbatim from the proofs.
    Formula,
    /// Exact free-group value.
    FreeExact,
    /// Conservative closed form standing in for an existence statement.
    Assembled,
    /// User-supplied value.
    Override,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Path {
    FreeExact,
    Assembled,
}

/// Which cancellation constant to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CancellationMode {
    /// `c = delta + mu(|b|)`.
    Easy1,
    /// `c = 3 delta + mu(|b|) + |w| + 1`.
    Circ,
}

impl FromStr for CancellationMode {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "easy1" => Ok(CancellationMode::Easy1),
            "circ" => Ok(CancellationMode::Circ),
            other => Err(BoundsError::UnknownMode(other.to_string())),
        }
    }
}

/// One evaluated constant together with the tree of values it was built from.
#[derive(Debug, Clone, Serialize)]
pub struct Bound {
    pub name: String,
    pub args: String,
    pub value: Magnitude,
    pub formula: String,
    pub provenance: Provenance,
    pub saturated: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Arc<Bound>>,
}

impl Bound {
    fn new(
        name: &str,
        args: String,
        value: Magnitude,
        formula: impl Into<String>,
        provenance: Provenance,
        parts: Vec<Arc<Bound>>,
    ) -> Arc<Bound> {
        let saturated = value.is_saturated();
        Arc::new(Bound {
            name: name.to_string(),
            args,
            value,
            formula: formula.into(),
            provenance,
            saturated,
            parts,
        })
    }

    /// Find a sub-bound by name, depth first.
    pub fn find(&self, name: &str) -> Option<&Bound> {
        if self.name == name {
            return Some(self);
        }
        self.parts.iter().find_map(|p| p.find(name))
    }
}

/// `2(2 sharp_s - 1)^r`, the ball-size bound used throughout.
pub fn ball_size_bound(radius: u32, sharp_s: u32) -> BigUint {
    BigUint::from(2u32) * num_traits::pow(BigUint::from(2 * sharp_s - 1), radius as usize)
}

/// Exact number of elements of length at most `radius` in the free group of rank `rank`.
pub fn free_ball_size(radius: u32, rank: u32) -> BigUint {
    let mut total = BigUint::from(1u32);
    for k in 1..=radius {
        total +=
            BigUint::from(2 * rank) * num_traits::pow(BigUint::from(2 * rank - 1), k as usize - 1);
    }
    total
}

/// Evaluation context: `(delta, sharp_s)`, overrides and a memo table.
pub struct BoundContext {
    delta: BigRational,
    sharp_s: u64,
    path: Path,
    overrides: BTreeMap<ConstName, Magnitude>,
    cache: Mutex<HashMap<String, Arc<Bound>>>,
}

impl fmt::Debug for BoundContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundContext")
            .field("delta", &self.delta.to_string())
            .field("sharp_s", &self.sharp_s)
            .field("path", &self.path)
            .field("overrides", &self.overrides)
            .finish()
    }
}

type Res = Result<Arc<Bound>, BoundsError>;

impl BoundContext {
    pub fn new(delta: BigRational, sharp_s: u64) -> Result<Self, BoundsError> {
        if delta.is_negative() {
            return Err(BoundsError::NegativeDelta);
        }
        if sharp_s == 0 {
            return Err(BoundsError::EmptyGeneratingSet);
        }
        let path = if delta.is_zero() {
            Path::FreeExact
        } else {
            Path::Assembled
        };
        Ok(BoundContext {
            delta,
            sharp_s,
            path,
            overrides: BTreeMap::new(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Free group on `sharp_s` generators (`delta = 0`).
    pub fn free(sharp_s: u64) -> Self {
        Self::new(BigRational::zero(), sharp_s).expect("valid")
    }

    /// Force the conservative closed forms even at `delta = 0`.
    pub fn assembled(mut self) -> Self {
        self.path = Path::Assembled;
        self.cache.get_mut().expect("unpoisoned").clear();
        self
    }

    pub fn with_override(mut self, name: ConstName, value: Magnitude) -> Self {
        self.overrides.insert(name, value);
        self.cache.get_mut().expect("unpoisoned").clear();
        self
    }

    pub fn path(&self) -> Path {
        self.path
    }

    pub fn sharp_s(&self) -> u64 {
        self.sharp_s
    }

    pub fn delta(&self) -> Magnitude {
        Magnitude::exact(self.delta.clone())
    }

    fn delta_is_zero(&self) -> bool {
        self.delta.is_zero()
    }

    fn memo(&self, key: String, compute: impl FnOnce() -> Res) -> Res {
        if let Some(hit) = self.cache.lock().expect("unpoisoned").get(&key) {
            return Ok(hit.clone());
        }
        let value = compute()?;
        self.cache
            .lock()
            .expect("unpoisoned")
            .insert(key, value.clone());
        Ok(value)
    }

    fn overridden(&self, name: ConstName, args: &str) -> Option<Arc<Bound>> {
        self.overrides.get(&name).map(|v| {
            Bound::new(
                name.as_str(),
                args.to_string(),
                v.clone(),
                "user override",
                Provenance::Override,
                vec![],
            )
        })
    }

    /// `#B(radius)` bound; equals `2(2#S-1)^floor(radius)` except for `#S = 1`
    /// where the ball of the integers (`2 floor(radius) + 1`) is larger.
    pub fn ball(&self, radius: &Magnitude) -> Magnitude {
        let formula = Magnitude::pow(2 * self.sharp_s - 1, radius).mul_int(2);
        if self.sharp_s == 1 {
            return formula.max(radius.floor().mul_int(2).add_int(1));
        }
        formula
    }

    fn ball_node(&self, radius: &Magnitude) -> Arc<Bound> {
        Bound::new(
            "ball",
            format!("radius={radius}"),
            self.ball(radius),
            "2(2#S-1)^floor(radius)",
            Provenance::Formula,
            vec![],
        )
    }

    /// Quasi-geodesic parameters `(lambda, epsilon)` for `n -> g^n`.
    pub fn quasigeodesic_params(
        &self,
        g_len: &Magnitude,
    ) -> Result<(Arc<Bound>, Arc<Bound>), BoundsError> {
        Ok((self.lambda(g_len)?, self.epsilon(g_len)?))
    }

    fn qg_power_count(&self) -> Magnitude {
        // an exponent r <= 1 + #B(8 delta) has a conjugate of g^r longer than 8 delta
        self.ball(&self.delta().mul_int(8)).add_int(1)
    }

    pub fn lambda(&self, g_len: &Magnitude) -> Res {
        let args = format!("len={g_len}");
        if let Some(o) = self.overridden(ConstName::Lambda, &args) {
            return Ok(o);
        }
        self.memo(format!("lambda|{args}"), || {
            Ok(match self.path {
                Path::FreeExact => Bound::new(
                    "lambda",
                    args,
                    g_len.clone(),
                    "|g| (|g^m| = m|core| + 2|witness|)",
                    Provenance::FreeExact,
                    vec![],
                ),
                Path::Assembled => {
                    let r = self.qg_power_count();
                    let k = r.mul(g_len);
                    Bound::new(
                        "lambda",
                        args,
                        r.mul(&k).mul_int(3),
                        format!(
                            "r_max * 3k with r_max = 1 + #B(8 delta) = {r}, k <= r_max |g| = {k}"
                        ),
                        Provenance::Assembled,
                        vec![],
                    )
                }
            })
        })
    }

    pub fn epsilon(&self, g_len: &Magnitude) -> Res {
        let args = format!("len={g_len}");
        if let Some(o) = self.overridden(ConstName::Epsilon, &args) {
            return Ok(o);
        }
        self.memo(format!("epsilon|{args}"), || {
            Ok(match self.path {
                Path::FreeExact => Bound::new(
                    "epsilon",
                    args,
                    positive_sub(g_len, 1),
                    "|g| - 1 (twice the longest possible witness)",
                    Provenance::FreeExact,
                    vec![],
                ),
                Path::Assembled => {
                    let r = self.qg_power_count();
                    let k = r.mul(g_len);
                    let conj = self.conj(&k)?;
                    let value = self
                        .delta()
                        .mul_int(2)
                        .add(&conj.value.mul_int(2))
                        .add(&positive_sub(&r, 1).mul(g_len));
                    Bound::new(
                        "epsilon",
                        args,
                        value,
                        "2 delta + 2 conj(r_max |g|) + (r_max - 1)|g|",
                        Provenance::Assembled,
                        vec![conj],
                    )
                }
            })
        })
    }

    /// Length of a shortest conjugator between conjugate elements of length <= `m`.
    pub fn conj(&self, m: &Magnitude) -> Res {
        let args = format!("len={m}");
        if let Some(o) = self.overridden(ConstName::Conj, &args) {
            return Ok(o);
        }
        self.memo(format!("conj|{args}"), || {
            Ok(match self.path {
                Path::FreeExact => Bound::new(
                    "conj",
                    args,
                    m.clone(),
                    "max(|u|,|v|)",
                    Provenance::FreeExact,
                    vec![],
                ),
                Path::Assembled => {
                    let radius = m.mul_int(2).add(&self.delta().mul_int(4));
                    let value = m.add(&self.delta().ceil().mul(&self.ball(&radius)));
                    Bound::new(
                        "conj",
                        args,
                        value,
                        "m + ceil(delta) #B(2m + 4 delta)",
                        Provenance::Assembled,
                        vec![],
                    )
                }
            })
        })
    }

    /// Tracking radius between a `(lambda, epsilon)`-quasi-geodesic and a geodesic.
    pub fn quasi_radius(&self, lambda: &Magnitude, epsilon: &Magnitude) -> Res {
        let args = format!("lambda={lambda},epsilon={epsilon}");
        if let Some(o) = self.overridden(ConstName::QuasiRadius, &args) {
            return Ok(o);
        }
        let value = lambda.square().mul(
            &lambda
                .mul_int(2)
                .add(&epsilon.mul_int(3))
                .add(&self.delta().mul_int(8))
                .add_int(2),
        );
        Ok(Bound::new(
            "R",
            args,
            value,
            "lambda^2 (2 lambda + 3 epsilon + 8 delta + 2)",
            Provenance::Assembled,
            vec![],
        ))
    }

    /// `mu(|g|)`: powers of `g` and geodesics between them stay this close.
    pub fn mu(&self, g_len: &Magnitude) -> Res {
        let args = format!("len={g_len}");
        if let Some(o) = self.overridden(ConstName::Mu, &args) {
            return Ok(o);
        }
        self.memo(format!("mu|{args}"), || {
            Ok(match self.path {
                Path::FreeExact => Bound::new(
                    "mu",
                    args,
                    g_len.half().floor(),
                    "floor(|g|/2) = |witness| + floor(|core|/2) maximised over |g|",
                    Provenance::FreeExact,
                    vec![],
                ),
                Path::Assembled => {
                    let (l, e) = self.quasigeodesic_params(g_len)?;
                    let r = self.quasi_radius(&l.value, &e.value)?;
                    Bound::new(
                        "mu",
                        args,
                        r.value.clone(),
                        "R(delta, lambda, epsilon)",
                        Provenance::Assembled,
                        vec![l, e, r],
                    )
                }
            })
        })
    }

    /// Radius `r(|g|)` with all axes of powers of `g` inside `<g> B(r)`.
    pub fn r_const(&self, g_len: &Magnitude) -> Res {
        let args = format!("len={g_len}");
        if let Some(o) = self.overridden(ConstName::R, &args) {
            return Ok(o);
        }
        self.memo(format!("r|{args}"), || {
            Ok(match self.path {
                Path::FreeExact => Bound::new(
                    "r",
                    args,
                    g_len.half().floor(),
                    "floor(|g|/2): axis vertices are witness * (core line)",
                    Provenance::FreeExact,
                    vec![],
                ),
                Path::Assembled => {
                    let mu = self.mu(g_len)?;
                    let c = self.delta().add(&mu.value);
                    let threshold = c.mul_int(2).add(&self.delta());
                    let conj = self.conj(&threshold.ceil())?;
                    let to_centralizer = threshold.clone().max(conj.value.clone());
                    let s = self.ball(&self.delta().mul_int(4));
                    let to_cyclic = s.mul(g_len).mul_int(2).add(&self.delta().mul_int(4));
                    let value = to_centralizer.add(&to_cyclic).add_int(1);
                    Bound::new(
                        "r",
                        args,
                        value,
                        "1 + max(2c + delta, conj(2c + delta)) + 2 #B(4 delta)|g| + 4 delta, c = delta + mu",
                        Provenance::Assembled,
                        vec![mu, conj],
                    )
                }
            })
        })
    }

    pub fn f1(&self, g_len: &Magnitude) -> Res {
        let args = format!("len={g_len}");
        if let Some(o) = self.overridden(ConstName::F1, &args) {
            return Ok(o);
        }
        let r = self.r_const(g_len)?;
        Ok(Bound::new(
            "f1",
            args,
            r.value.mul_int(4),
            "4 r",
            Provenance::Formula,
            vec![r],
        ))
    }

    pub fn f2(&self, g_len: &Magnitude) -> Res {
        let args = format!("len={g_len}");
        if let Some(o) = self.overridden(ConstName::F2, &args) {
            return Ok(o);
        }
        let r = self.r_const(g_len)?;
        let mu = self.mu(g_len)?;
        let value = r.value.mul_int(2).add(&mu.value.mul_int(2));
        Ok(Bound::new(
            "f2",
            args,
            value,
            "2 r + 2 mu",
            Provenance::Formula,
            vec![r, mu],
        ))
    }

    pub fn hbar(&self, b_len: &Magnitude) -> Res {
        let args = format!("len={b_len}");
        if let Some(o) = self.overridden(ConstName::Hbar, &args) {
            return Ok(o);
        }
        self.memo(format!("hbar|{args}"), || {
            let f1 = self.f1(b_len)?;
            let f2 = self.f2(b_len)?;
            let r = self.r_const(b_len)?;
            let value = f1
                .value
                .half()
                .add(&f2.value.half())
                .add(&r.value.mul_int(2))
                .add(&self.delta().mul_int(21))
                .add_int(1);
            Ok(Bound::new(
                "hbar",
                args,
                value,
                "f1/2 + f2/2 + 2 r + 21 delta + 1",
                Provenance::Formula,
                vec![f1, f2, r],
            ))
        })
    }

    pub fn cancellation_c(
        &self,
        mode: CancellationMode,
        b_len: &Magnitude,
        w_len: &Magnitude,
    ) -> Res {
        let mu = self.mu(b_len)?;
        Ok(match mode {
            CancellationMode::Easy1 => Bound::new(
                "c_easy1",
                format!("len_b={b_len}"),
                self.delta().add(&mu.value),
                "delta + mu(|b|)",
                Provenance::Formula,
                vec![mu],
            ),
            CancellationMode::Circ => Bound::new(
                "c_circ",
                format!("len_b={b_len},len_w={w_len}"),
                self.delta().mul_int(3).add(&mu.value).add(w_len).add_int(1),
                "3 delta + mu(|b|) + |w| + 1",
                Provenance::Formula,
                vec![mu],
            ),
        })
    }

    /// `f(|g|,|v|)` with `|g^p v g^q| > |g^(p+q)| - f`.
    pub fn length_defect(&self, g_len: &Magnitude, v_len: &Magnitude) -> Res {
        let args = format!("len_g={g_len},len_v={v_len}");
        if let Some(o) = self.overridden(ConstName::LengthDefect, &args) {
            return Ok(o);
        }
        self.memo(format!("f|{args}"), || {
            let mu = self.mu(g_len)?;
            let n = self.ball(&self.delta().mul_int(2).add(&mu.value.mul_int(2)).add(v_len));
            let m = n.add_int(1).mul(&mu.value.add_int(1)).mul_int(2);
            let value = v_len.add(&m.mul_int(2));
            Ok(Bound::new(
                "f",
                args,
                value,
                format!(
                    "|v| + 2 M', M' = 2(N'+1)(mu+1) = {m}, N' = #B(2 delta + 2 mu + |v|) = {n}"
                ),
                Provenance::Formula,
                vec![mu],
            ))
        })
    }

    /// Least `k0` with `|g^k| > target` for all `k >= k0`.
    pub fn growth_threshold(&self, g_len: &Magnitude, target: &Magnitude) -> Res {
        let args = format!("len={g_len},target={target}");
        Ok(match self.path {
            Path::FreeExact => Bound::new(
                "k0_growth",
                args,
                target.floor().add_int(1),
                "floor(target) + 1 since |g^k| >= k",
                Provenance::FreeExact,
                vec![],
            ),
            Path::Assembled => {
                let (l, e) = self.quasigeodesic_params(g_len)?;
                let value = l.value.mul(&target.add(&e.value)).floor().add_int(1);
                Bound::new(
                    "k0_growth",
                    args,
                    value,
                    "floor(lambda (target + epsilon)) + 1",
                    Provenance::Formula,
                    vec![l, e],
                )
            }
        })
    }

    /// Least `k0` with `||g^k|| > target` for all `k > k0`.
    pub fn norm_threshold(&self, g_len: &Magnitude, target: &Magnitude) -> Res {
        let args = format!("len={g_len},target={target}");
        Ok(match self.path {
            Path::FreeExact => Bound::new(
                "k0_norm",
                args,
                target.floor(),
                "floor(target) since ||g^k|| >= k",
                Provenance::FreeExact,
                vec![],
            ),
            Path::Assembled => {
                let (l, e) = self.quasigeodesic_params(g_len)?;
                let r = self.r_const(g_len)?;
                let value = l
                    .value
                    .mul(&target.add(&e.value).add(&r.value.mul_int(2)))
                    .floor();
                Bound::new(
                    "k0_norm",
                    args,
                    value,
                    "floor(lambda (target + epsilon + 2 r))",
                    Provenance::Formula,
                    vec![l, e, r],
                )
            }
        })
    }

    /// `M(|b|,|w|)`: how many `k` force the two-equation conclusion.
    pub fn m_const(&self, b_len: &Magnitude, w_len: &Magnitude) -> Res {
        let args = format!("len_b={b_len},len_w={w_len}");
        if let Some(o) = self.overridden(ConstName::M, &args) {
            return Ok(o);
        }
        self.memo(format!("M|{args}"), || {
            let c = self.cancellation_c(CancellationMode::Circ, b_len, w_len)?;
            let mu = self.mu(b_len)?;
            let f = self.length_defect(b_len, w_len)?;
            let target = c.value.mul_int(2).add(&self.delta()).add(&f.value);
            let k0 = self.growth_threshold(b_len, &target)?;
            // 2 | |e_k| - |h| | is bounded by the two cancellation defects plus
            // the length defects of b^(k-l) w b^l against b^k.
            let len_gap = c
                .value
                .mul_int(4)
                .add(&self.delta().mul_int(2))
                .add(&w_len.mul_int(2))
                .add(&f.value)
                .add(&mu.value.mul_int(2))
                .half();
            let path_radius = match self.path {
                Path::FreeExact => Bound::new(
                    "R_path",
                    format!("c={},len_w={w_len}", c.value),
                    c.value.add(w_len),
                    "c + |w| (joints backtrack less than c in a tree)",
                    Provenance::FreeExact,
                    vec![],
                ),
                Path::Assembled => {
                    let eps = c
                        .value
                        .mul_int(4)
                        .add(&self.delta().mul_int(2))
                        .mul_int(2)
                        .add(&w_len.mul_int(2));
                    self.quasi_radius(&Magnitude::int(1), &eps)?
                }
            };
            let rho = Bound::new(
                "rho",
                args.clone(),
                path_radius.value.mul_int(4).add(&len_gap),
                "4 R_path + (4c + 2 delta + 2|w| + f + 2 mu)/2",
                Provenance::Assembled,
                vec![path_radius],
            );
            let ball = self.ball_node(&rho.value);
            let value = k0.value.add(&ball.value).add_int(1);
            Ok(Bound::new(
                "M",
                args,
                value,
                "1 + k0 + #B(rho)",
                Provenance::Formula,
                vec![c, f, k0, rho, ball],
            ))
        })
    }

    /// Constant `C(|g|)` for pairs inside a cyclic subgroup.
    pub fn c_cyclic(&self, g_len: &Magnitude) -> Res {
        let args = format!("len={g_len}");
        if let Some(o) = self.overridden(ConstName::CCyclic, &args) {
            return Ok(o);
        }
        self.memo(format!("C_cyclic|{args}"), || {
            let c = self.cancellation_c(CancellationMode::Easy1, g_len, &Magnitude::zero())?;
            let hbar = self.hbar(g_len)?;
            let mu = self.mu(g_len)?;
            let c0 = self.growth_threshold(g_len, &c.value.mul_int(2).add(&self.delta()))?;
            let radius = hbar
                .value
                .add(&mu.value)
                .add(&c.value.mul_int(2))
                .add(&self.delta());
            let ball = self.ball_node(&radius);
            let value = c0.value.add(&ball.value).max(Magnitude::int(1));
            Ok(Bound::new(
                "C_cyclic",
                args,
                value,
                "max(1, C0 + #B(hbar + mu + 2c + delta))",
                Provenance::Formula,
                vec![c, hbar, mu, c0, ball],
            ))
        })
    }

    /// Power making two non-commuting elements generate a free group of rank 2.
    pub fn free_power(&self, total_len: &Magnitude) -> Res {
        let args = format!("len={total_len}");
        if let Some(o) = self.overridden(ConstName::FreePower, &args) {
            return Ok(o);
        }
        Ok(match self.path {
            Path::FreeExact => Bound::new(
                "free_power",
                args,
                Magnitude::int(1),
                "1: two non-commuting elements of a free group generate a free group of rank 2",
                Provenance::FreeExact,
                vec![],
            ),
            Path::Assembled => Bound::new(
                "free_power",
                args,
                self.delta()
                    .ceil()
                    .mul(&self.ball(&total_len.add(&self.delta().mul_int(8))))
                    .add_int(1),
                "1 + ceil(delta) #B(sum + 8 delta)",
                Provenance::Assembled,
                vec![],
            ),
        })
    }

    /// `k0(|a|,|b|)` beyond which `a b^k` is root-free.
    pub fn minasyan_k0(&self, a_len: &Magnitude, b_len: &Magnitude) -> Res {
        let args = format!("len_a={a_len},len_b={b_len}");
        if let Some(o) = self.overridden(ConstName::MinasyanK0, &args) {
            return Ok(o);
        }
        if !self.delta_is_zero() {
            return Err(BoundsError::MissingOverride(ConstName::MinasyanK0));
        }
        Ok(Bound::new(
            "minasyan_k0",
            args,
            a_len.add(b_len).add_int(2),
            "|a| + |b| + 2",
            Provenance::FreeExact,
            vec![],
        ))
    }

    /// Constant `L(|a|,|b|)` for pairs.
    pub fn l_two(&self, a_len: &Magnitude, b_len: &Magnitude) -> Res {
        let args = format!("len_a={a_len},len_b={b_len}");
        if let Some(o) = self.overridden(ConstName::LTwo, &args) {
            return Ok(o);
        }
        self.memo(format!("L_two|{args}"), || {
            let fifteen_delta = self.delta().mul_int(15);
            let ra = self.norm_threshold(a_len, &fifteen_delta)?;
            let rb = self.norm_threshold(b_len, &fifteen_delta)?;
            let r0 = ra.value.clone().max(rb.value.clone()).add_int(1);
            let p = self.free_power(&r0.mul(&a_len.add(b_len)))?;
            let mult = p.value.mul(&r0);
            let a2 = mult.mul(a_len);
            let b2 = mult.mul(b_len);
            let hbar = self.hbar(&b2)?;
            let n = self.ball_node(&hbar.value);
            let n_sq = n.value.square();
            let w_max = n_sq
                .mul_int(3)
                .add_int(1)
                .mul(&n.value.add_int(1).mul(&a2).add(&b2))
                .mul_int(2);
            let m = self.m_const(&b2, &w_max)?;
            let cyc = self.c_cyclic(&a2.clone().max(b2.clone()))?;
            let core = n_sq.mul_int(6).add_int(2).max(m.value.clone()).max(cyc.value.clone());
            let value = core.mul(&mult);
            Ok(Bound::new(
                "L_two",
                args,
                value,
                format!(
                    "r0 p max(2 + 6 N^2, max_W M(|b|,|w|), C_cyclic) with N = #B(hbar(|b|)), |w| <= 2(1+3N^2)((1+N)|a|+|b|) = {w_max}, r0 = {r0}"
                ),
                Provenance::Formula,
                vec![ra, rb, p, hbar, n, m, cyc],
            ))
        })
    }

    /// Word length needed to cover every `(x1^i x2^l)^j x2^k` with `|i|,|j|,|k|,|l| <= L`.
    pub fn criterion_length(l: &Magnitude) -> Magnitude {
        l.square().mul_int(2).add(l)
    }

    /// The word-length bound for tuples of `n` elements with total length `sum_len`.
    pub fn c_main(&self, sum_len: &Magnitude, n: u64) -> Res {
        let args = format!("sum={sum_len},n={n}");
        if let Some(o) = self.overridden(ConstName::CMain, &args) {
            return Ok(o);
        }
        self.memo(format!("C_main|{args}"), || {
            if n <= 1 {
                return Ok(Bound::new(
                    "C_main",
                    args,
                    Magnitude::int(1),
                    "1: a single component only needs conjugacy",
                    Provenance::Formula,
                    vec![],
                ));
            }
            // every pair inside a cyclic subgroup
            let pair = self.l_two(sum_len, sum_len)?;
            let cyclic_case = Self::criterion_length(&pair.value);
            // a non-cyclic pair is replaced by m-th powers, then by root-free
            // combinations a1 a2^k and a2 (a1 a2^k)^k twice
            let m = self.free_power(sum_len)?;
            let a = m.value.mul(sum_len);
            let k0 = self.minasyan_k0(&a, &a)?;
            let k = k0.value.add_int(1).max(Magnitude::int(2));
            let longest = a.mul(&k.mul(&k.add_int(1)).add_int(1));
            let pair_rootfree = self.l_two(&longest, &longest)?;
            let substitution = m.value.mul(&k.square().add(&k).add_int(1));
            let general_case = Self::criterion_length(&pair_rootfree.value).mul(&substitution);
            let value = cyclic_case.max(general_case);
            Ok(Bound::new(
                "C_main",
                args,
                value,
                format!(
                    "max(2L^2+L for L = L_two(sum,sum), (2L'^2+L') m(1+k+k^2) for L' = L_two(A(1+k+k^2)), A = m sum, k = max(2, k0+1) = {k})"
                ),
                Provenance::Assembled,
                vec![pair, m, k0, pair_rootfree],
            ))
        })
    }

    /// Ball radius certifying that a pointwise-inner endomorphism is inner.
    pub fn c_inner(&self) -> Res {
        self.c_main(&Magnitude::int(self.sharp_s), self.sharp_s)
    }

    /// Evaluate a constant by name, as used by the command line.
    pub fn by_name(&self, name: &str, lens: &[u64], n: u64) -> Res {
        let len = |i: usize| -> Result<Magnitude, BoundsError> {
            let v = lens.get(i).copied().unwrap_or(1);
            Ok(Magnitude::int(v))
        };
        match name {
            "ball" => Ok(self.ball_node(&len(0)?)),
            "lambda" => self.lambda(&len(0)?),
            "epsilon" => self.epsilon(&len(0)?),
            "conj" => self.conj(&len(0)?),
            "mu" => self.mu(&len(0)?),
            "r" => self.r_const(&len(0)?),
            "f1" => self.f1(&len(0)?),
            "f2" => self.f2(&len(0)?),
            "hbar" => self.hbar(&len(0)?),
            "c_easy1" => self.cancellation_c(CancellationMode::Easy1, &len(0)?, &Magnitude::zero()),
            "c_circ" => self.cancellation_c(CancellationMode::Circ, &len(0)?, &len(1)?),
            "f" => self.length_defect(&len(0)?, &len(1)?),
            "M" => self.m_const(&len(0)?, &len(1)?),
            "C_cyclic" => self.c_cyclic(&len(0)?),
            "L_two" => self.l_two(&len(0)?, &len(1)?),
            "C_main" => self.c_main(&len(0)?, n),
            "C_inner" => self.c_inner(),
            other => Err(BoundsError::UnknownConstant(other.to_string())),
        }
    }
}

fn positive_sub(v: &Magnitude, k: u64) -> Magnitude {
    match v.as_exact() {
        Some(x) => {
            let d = x - BigRational::from_integer(BigInt::from(k));
            if d.is_negative() {
                Magnitude::zero()
            } else {
                Magnitude::exact(d)
            }
        }
        None => v.clone(),
    }
}

/// Exact free-group quasi-geodesic parameters of a specific word:
/// `|g^m| = m |core| + 2 |witness|`, so `(lambda, epsilon) = (max(1,|core|), 2|witness|)`.
pub fn free_quasigeodesic_for_word(g: &Word) -> (u64, u64) {
    let cw = g.cyclic_reduce();
    let (core, k) = (cw.core.len() as u64, (g.len() - cw.core.len()) as u64 / 2);
    (core.max(1), 2 * k)
}

/// Exact free-group `mu` of a specific word: `|witness| + floor(|core|/2)`.
pub fn free_mu_for_word(g: &Word) -> u64 {
    let core = g.cyclic_length() as u64;
    (g.len() as u64 - core) / 2 + core / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: u64) -> Magnitude {
        Magnitude::int(v)
    }

    #[test]
    fn ball_bound_examples() {
        assert_eq!(ball_size_bound(1, 2), BigUint::from(6u32));
        assert_eq!(ball_size_bound(0, 5), BigUint::from(2u32));
        assert_eq!(ball_size_bound(2, 2), BigUint::from(18u32));
        assert_eq!(free_ball_size(2, 2), BigUint::from(17u32));
    }

    #[test]
    fn free_exact_small_values() {
        let ctx = BoundContext::free(2);
        let one = int(1);
        assert_eq!(ctx.mu(&one).unwrap().value, int(0));
        assert_eq!(ctx.r_const(&one).unwrap().value, int(0));
        assert_eq!(ctx.f1(&one).unwrap().value, int(0));
        assert_eq!(ctx.f2(&one).unwrap().value, int(0));
        assert_eq!(ctx.hbar(&one).unwrap().value, int(1));
        assert_eq!(ctx.mu(&int(3)).unwrap().value, int(1));
        assert_eq!(
            ctx.cancellation_c(CancellationMode::Easy1, &one, &int(0))
                .unwrap()
                .value,
            int(0)
        );
        assert_eq!(
            ctx.cancellation_c(CancellationMode::Circ, &one, &int(2))
                .unwrap()
                .value,
            int(3)
        );
        let (l, e) = ctx.quasigeodesic_params(&one).unwrap();
        assert_eq!((l.value.clone(), e.value.clone()), (int(1), int(0)));
    }

    #[test]
    fn word_level_free_values() {
        let g = Word::parse_unchecked("abA").unwrap();
        assert_eq!(free_quasigeodesic_for_word(&g), (1, 2));
        assert_eq!(free_mu_for_word(&g), 1);
        assert_eq!(free_mu_for_word(&Word::parse_unchecked("a").unwrap()), 0);
        assert_eq!(free_mu_for_word(&Word::parse_unchecked("ab").unwrap()), 1);
    }

    #[test]
    fn hbar_symbolic_identity_at_zero_delta() {
        let ctx = BoundContext::free(2);
        for n in 1..20 {
            let len = int(n);
            let r = ctx.r_const(&len).unwrap().value.clone();
            let mu = ctx.mu(&len).unwrap().value.clone();
            let expected = r.mul_int(5).add(&mu).add_int(1);
            assert_eq!(ctx.hbar(&len).unwrap().value, expected);
        }
    }

    #[test]
    fn overrides_flow_to_dependents() {
        let base = BoundContext::free(2);
        let over = BoundContext::free(2).with_override(ConstName::Hbar, int(50));
        let len = int(2);
        let n_base = base.l_two(&len, &len).unwrap();
        let n_over = over.l_two(&len, &len).unwrap();
        assert_ne!(n_base.value, n_over.value);
        assert_eq!(
            n_over.find("hbar").unwrap().provenance,
            Provenance::Override
        );
        let main_base = base.c_main(&int(3), 2).unwrap();
        let main_over = over.c_main(&int(3), 2).unwrap();
        assert_ne!(main_base.value, main_over.value);
    }

    #[test]
    fn minasyan_requires_override_for_positive_delta() {
        let ctx = BoundContext::new(BigRational::from_integer(BigInt::from(1)), 2).unwrap();
        assert_eq!(
            ctx.c_main(&int(2), 2).unwrap_err(),
            BoundsError::MissingOverride(ConstName::MinasyanK0)
        );
        let ctx = ctx.with_override(ConstName::MinasyanK0, int(5));
        assert!(ctx.c_main(&int(2), 2).is_ok());
    }

    #[test]
    fn c_inner_evaluates_without_panicking() {
        let ctx = BoundContext::free(2);
        let c = ctx.c_inner().unwrap();
        assert!(c.value > int(1));
    }

    #[test]
    fn rejects_bad_context() {
        let neg = BigRational::from_integer(BigInt::from(-1));
        assert_eq!(
            BoundContext::new(neg, 2).unwrap_err(),
            BoundsError::NegativeDelta
        );
        assert_eq!(
            BoundContext::new(BigRational::zero(), 0).unwrap_err(),
            BoundsError::EmptyGeneratingSet
        );
        assert!("nope".parse::<ConstName>().is_err());
        assert!("sideways".parse::<CancellationMode>().is_err());
    }
}
