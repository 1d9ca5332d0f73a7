//! Kirby calculus at the level of the intersection form.
//!
//! A [`MarkedForm`] is the integer intersection form of a 2-handlebody in a chosen handle
//! basis together with the values of `c1` on that basis. Handle moves act by integral
//! congruence:
//!
//! * `slide i j ±`: the attaching circle of handle `i` slides over handle `j`, so the new
//!   basis vector is `e_i ± e_j` (`Q' = EᵀQE`, `c1' = Eᵀc1`, `E = I ± E_ji`);
//! * `blowup ± c`: adds an unlinked (±1)-framed unknot on which `c1` evaluates to `c`;
//! * `blowdown i`: removes an unlinked (±1)-framed class;
//! * `swap i j`: reorders the basis;
//! * `reverse i`: reverses the orientation of the attaching circle of handle `i`.
//!
//! Scripts serialize one move per line in that syntax, with 0-based indices.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exact_arith::{inertia, Inertia, QSymMatrix, Rat};
use crate::invariants::{c1_squared, d3_from_parts, InvariantError};
use crate::surgery::FourManifoldData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KirbyError {
    #[error("index {index} out of range for a form of dimension {dim}")]
    Index { index: usize, dim: usize },
    #[error("move precondition failed: {0}")]
    Precondition(String),
    #[error("invalid marked form: {0}")]
    InvalidForm(String),
    #[error("integer overflow while applying a move")]
    Overflow,
    #[error("no applicable move; reduction stopped after {} moves", .0.script.len())]
    ReductionIncomplete(Box<Reduction>),
    #[error("cannot parse move script line {line}: {text:?}")]
    Parse { line: usize, text: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn of(v: i64) -> Sign {
        if v < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Slide { i: usize, j: usize, sign: Sign },
    Blowup { sign: Sign, c1: i64 },
    Blowdown { i: usize },
    Swap { i: usize, j: usize },
    Reverse { i: usize },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Slide { i, j, sign } => write!(f, "slide {i} {j} {sign}"),
            Move::Blowup { sign, c1 } => write!(f, "blowup {sign} {c1}"),
            Move::Blowdown { i } => write!(f, "blowdown {i}"),
            Move::Swap { i, j } => write!(f, "swap {i} {j}"),
            Move::Reverse { i } => write!(f, "reverse {i}"),
        }
    }
}

impl FromStr for Move {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let idx = |t: &str| t.parse::<usize>().map_err(|_| ());
        let sign = |t: &str| match t {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            _ => Err(()),
        };
        match parts.as_slice() {
            ["slide", i, j, s] => Ok(Move::Slide {
                i: idx(i)?,
                j: idx(j)?,
                sign: sign(s)?,
            }),
            ["blowup", s, c] => Ok(Move::Blowup {
                sign: sign(s)?,
                c1: c.parse().map_err(|_| ())?,
            }),
            ["blowdown", i] => Ok(Move::Blowdown { i: idx(i)? }),
            ["swap", i, j] => Ok(Move::Swap {
                i: idx(i)?,
                j: idx(j)?,
            }),
            ["reverse", i] => Ok(Move::Reverse { i: idx(i)? }),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveScript(pub Vec<Move>);

impl MoveScript {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }
}

impl fmt::Display for MoveScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for MoveScript {
    type Err = KirbyError;

    /// One move per line; blank lines and `#` comments are skipped.
    fn from_str(s: &str) -> Result<Self, KirbyError> {
        let mut out = Vec::new();
        for (n, line) in s.lines().enumerate() {
            let text = line.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            out.push(text.parse().map_err(|_| KirbyError::Parse {
                line: n + 1,
                text: line.to_string(),
            })?);
        }
        Ok(MoveScript(out))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedForm {
    q: Vec<Vec<i64>>,
    c1: Vec<i64>,
    labels: Vec<String>,
}

impl MarkedForm {
    pub fn new(q: Vec<Vec<i64>>, c1: Vec<i64>, labels: Vec<String>) -> Result<Self, KirbyError> {
        let n = q.len();
        if q.iter().any(|r| r.len() != n) || c1.len() != n || labels.len() != n {
            return Err(KirbyError::InvalidForm(format!(
                "form, c1 and labels must all have dimension {n}"
            )));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if q[i][j] != q[j][i] {
                    return Err(KirbyError::InvalidForm(format!(
                        "not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(MarkedForm { q, c1, labels })
    }

    /// Labels default to `e0, e1, ...`.
    pub fn unlabeled(q: Vec<Vec<i64>>, c1: Vec<i64>) -> Result<Self, KirbyError> {
        let labels = (0..q.len()).map(|i| format!("e{i}")).collect();
        Self::new(q, c1, labels)
    }

    pub fn from_four_manifold(fmd: &FourManifoldData) -> Self {
        MarkedForm {
            q: fmd.int_form(),
            c1: fmd.c1.clone(),
            labels: fmd.labels.clone(),
        }
    }

    pub fn q(&self) -> &[Vec<i64>] {
        &self.q
    }

    pub fn c1(&self) -> &[i64] {
        &self.c1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn to_qsym(&self) -> QSymMatrix {
        QSymMatrix::from_int_rows(&self.q).expect("symmetric by construction")
    }

    pub fn inertia(&self) -> Inertia {
        inertia(&self.to_qsym())
    }

    pub fn determinant(&self) -> Rat {
        self.to_qsym().determinant()
    }

    /// `(c1² - 3σ - 2χ)/4 + q_count` for the handlebody with this form and
    /// `one_handles` 1-handles.
    pub fn d3(&self, one_handles: u32, q_count: usize) -> Result<Rat, InvariantError> {
        let c1: Vec<Rat> = self.c1.iter().map(|&x| Rat::int(x)).collect();
        let c2 = c1_squared(&self.to_qsym(), &c1)?;
        let chi = 1 - one_handles as i64 + self.dim() as i64;
        Ok(d3_from_parts(&c2, self.inertia().signature(), chi, q_count))
    }

    fn check(&self, i: usize) -> Result<(), KirbyError> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(KirbyError::Index {
                index: i,
                dim: self.dim(),
            })
        }
    }

    pub fn apply(&self, mv: &Move) -> Result<MarkedForm, KirbyError> {
        let mut out = self.clone();
        out.apply_mut(mv)?;
        Ok(out)
    }

    pub fn replay(&self, script: &MoveScript) -> Result<MarkedForm, KirbyError> {
        let mut out = self.clone();
        for mv in script.moves() {
            out.apply_mut(mv)?;
        }
        Ok(out)
    }

    fn apply_mut(&mut self, mv: &Move) -> Result<(), KirbyError> {
        match *mv {
            Move::Slide { i, j, sign } => self.slide_mut(i, j, sign),
            Move::Blowup { sign, c1 } => self.blowup_mut(sign, c1),
            Move::Blowdown { i } => self.blowdown_mut(i),
            Move::Swap { i, j } => {
                self.check(i)?;
                self.check(j)?;
                self.q.swap(i, j);
                for row in self.q.iter_mut() {
                    row.swap(i, j);
                }
                self.c1.swap(i, j);
                self.labels.swap(i, j);
                Ok(())
            }
            Move::Reverse { i } => {
                self.check(i)?;
                for t in 0..self.dim() {
                    if t != i {
                        self.q[i][t] = -self.q[i][t];
                        self.q[t][i] = -self.q[t][i];
                    }
                }
                self.c1[i] = -self.c1[i];
                Ok(())
            }
        }
    }

    fn slide_mut(&mut self, i: usize, j: usize, sign: Sign) -> Result<(), KirbyError> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(KirbyError::Precondition(
                "cannot slide a handle over itself".into(),
            ));
        }
        let s = sign.value();
        let ov = || KirbyError::Overflow;
        let qii = self.q[i][j]
            .checked_mul(2 * s)
            .and_then(|x| x.checked_add(self.q[i][i]))
            .and_then(|x| x.checked_add(self.q[j][j]))
            .ok_or_else(ov)?;
        for t in 0..self.dim() {
            if t != i {
                let v = self.q[i][t].checked_add(s * self.q[j][t]).ok_or_else(ov)?;
                self.q[i][t] = v;
                self.q[t][i] = v;
            }
        }
        self.q[i][i] = qii;
        self.c1[i] = self.c1[i].checked_add(s * self.c1[j]).ok_or_else(ov)?;
        Ok(())
    }

    fn blowup_mut(&mut self, sign: Sign, c1: i64) -> Result<(), KirbyError> {
        if c1.abs() != 1 {
            return Err(KirbyError::Precondition(format!(
                "blowup needs c1 = ±1 on the new class, got {c1}"
            )));
        }
        for row in self.q.iter_mut() {
            row.push(0);
        }
        let mut row = vec![0; self.dim() + 1];
        row[self.dim()] = sign.value();
        self.q.push(row);
        self.c1.push(c1);
        let mut k = self.labels.len();
        while self.labels.iter().any(|l| *l == format!("E{k}")) {
            k += 1;
        }
        self.labels.push(format!("E{k}"));
        Ok(())
    }

    fn blowdown_mut(&mut self, i: usize) -> Result<(), KirbyError> {
        self.check(i)?;
        let d = self.q[i][i];
        if d.abs() != 1 {
            return Err(KirbyError::Precondition(format!(
                "blowdown needs framing ±1, handle {i} has {d}"
            )));
        }
        if (0..self.dim()).any(|t| t != i && self.q[i][t] != 0) {
            return Err(KirbyError::Precondition(format!(
                "handle {i} still links other handles"
            )));
        }
        if d == -1 && self.c1[i].abs() != 1 {
            return Err(KirbyError::Precondition(format!(
                "(-1)-class {i} has c1 = {}, expected ±1",
                self.c1[i]
            )));
        }
        self.q.remove(i);
        for row in self.q.iter_mut() {
            row.remove(i);
        }
        self.c1.remove(i);
        self.labels.remove(i);
        Ok(())
    }

    /// Orthogonal block structure, if the form is already split into 1×1 blocks and
    /// standard hyperbolic pairs `[[0,1],[1,0]]` on adjacent indices.
    pub fn blocks(&self) -> Option<Vec<Block>> {
        let n = self.dim();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            let links: Vec<usize> = (0..n).filter(|&t| t != i && self.q[i][t] != 0).collect();
            match links.as_slice() {
                [] => {
                    out.push(Block::Scalar(self.q[i][i]));
                    i += 1;
                }
                [j] if *j == i + 1
                    && self.q[i][i] == 0
                    && self.q[*j][*j] == 0
                    && self.q[i][*j] == 1
                    && (0..n).all(|t| t == i || t == *j || self.q[*j][t] == 0) =>
                {
                    out.push(Block::Hyperbolic);
                    i += 2;
                }
                _ => return None,
            }
        }
        Some(out)
    }

    /// Compact description such as `[4] + H + 2<-1>`, or `None` if not in block form.
    pub fn describe_blocks(&self) -> Option<String> {
        let blocks = self.blocks()?;
        if blocks.is_empty() {
            return Some("0".into());
        }
        let mut parts: Vec<String> = Vec::new();
        let mut k = 0;
        while k < blocks.len() {
            let b = blocks[k];
            let run = blocks[k..].iter().take_while(|&&x| x == b).count();
            let name = match b {
                Block::Scalar(v) if v.abs() == 1 => format!("<{v}>"),
                Block::Scalar(v) => format!("[{v}]"),
                Block::Hyperbolic => "H".to_string(),
            };
            parts.push(if run > 1 {
                format!("{run}{name}")
            } else {
                name
            });
            k += run;
        }
        Some(parts.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    Scalar(i64),
    Hyperbolic,
}

pub fn handleslide(
    m: &MarkedForm,
    i: usize,
    j: usize,
    sign: Sign,
) -> Result<MarkedForm, KirbyError> {
    m.apply(&Move::Slide { i, j, sign })
}

pub fn blowup(m: &MarkedForm, sign: Sign, c1: i64) -> Result<MarkedForm, KirbyError> {
    m.apply(&Move::Blowup { sign, c1 })
}

pub fn blowdown(m: &MarkedForm, i: usize) -> Result<MarkedForm, KirbyError> {
    m.apply(&Move::Blowdown { i })
}

/// Final form of a reduction and the script producing it from the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub form: MarkedForm,
    pub script: MoveScript,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Split {
    One(usize),
    Two(usize, usize),
}

struct Reducer {
    form: MarkedForm,
    script: Vec<Move>,
    split: Vec<bool>,
    blocks: Vec<Split>,
}

impl Reducer {
    fn q(&self, i: usize, j: usize) -> i64 {
        self.form.q[i][j]
    }

    fn emit(&mut self, mv: Move) -> Result<(), KirbyError> {
        self.form.apply_mut(&mv)?;
        self.script.push(mv);
        Ok(())
    }

    fn slide(&mut self, i: usize, j: usize, s: i64) -> Result<(), KirbyError> {
        self.emit(Move::Slide {
            i,
            j,
            sign: Sign::of(s),
        })
    }

    fn unsplit(&self) -> Vec<usize> {
        (0..self.form.dim()).filter(|&k| !self.split[k]).collect()
    }

    /// Marks blocks that are already orthogonal to everything else.
    fn mark_existing(&mut self) {
        let n = self.form.dim();
        for i in 0..n {
            if self.split[i] {
                continue;
            }
            let links: Vec<usize> = (0..n).filter(|&t| t != i && self.q(i, t) != 0).collect();
            match links.as_slice() {
                [] => {
                    self.split[i] = true;
                    self.blocks.push(Split::One(i));
                }
                [j] if self.q(i, i) == 0
                    && self.q(*j, *j) == 0
                    && self.q(i, *j).abs() == 1
                    && (0..n).all(|t| t == i || t == *j || self.q(*j, t) == 0) =>
                {
                    self.split[i] = true;
                    self.split[*j] = true;
                    self.blocks.push(Split::Two(i.min(*j), i.max(*j)));
                }
                _ => {}
            }
        }
    }

    /// Clears row `k` (diagonal ±1) by sliding the other unsplit handles over it.
    fn split_unit(&mut self, k: usize, un: &[usize]) -> Result<(), KirbyError> {
        let d = self.q(k, k);
        for &j in un {
            if j == k {
                continue;
            }
            while self.q(j, k) != 0 {
                let s = if self.q(j, k) * d > 0 { -1 } else { 1 };
                self.slide(j, k, s)?;
            }
        }
        self.split[k] = true;
        self.blocks.push(Split::One(k));
        Ok(())
    }

    /// Turns `(a, b)` with `Q_aa = 0`, `|Q_ab| = 1`, `Q_bb` even into a hyperbolic pair
    /// orthogonal to the remaining unsplit handles.
    fn split_hyperbolic(&mut self, a: usize, b: usize, un: &[usize]) -> Result<(), KirbyError> {
        while self.q(b, b) != 0 {
            let s = if self.q(b, b) * self.q(a, b) > 0 {
                -1
            } else {
                1
            };
            self.slide(b, a, s)?;
        }
        for &j in un {
            if j == a || j == b {
                continue;
            }
            while self.q(j, a) != 0 {
                let s = if self.q(j, a) * self.q(b, a) > 0 {
                    -1
                } else {
                    1
                };
                self.slide(j, b, s)?;
            }
            while self.q(j, b) != 0 {
                let s = if self.q(j, b) * self.q(a, b) > 0 {
                    -1
                } else {
                    1
                };
                self.slide(j, a, s)?;
            }
        }
        self.split[a] = true;
        self.split[b] = true;
        self.blocks.push(Split::Two(a.min(b), a.max(b)));
        Ok(())
    }

    fn find_hyperbolic(&self, un: &[usize], c1_free: bool) -> Option<(usize, usize)> {
        let c = &self.form.c1;
        un.iter()
            .flat_map(|&a| un.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| {
                a != b
                    && self.q(a, a) == 0
                    && self.q(a, b).abs() == 1
                    && self.q(b, b) % 2 == 0
                    && (!c1_free || (c[a] == 0 && c[b] == 0))
            })
    }

    /// One greedy step; `Ok(false)` when nothing applies.
    fn step(&mut self) -> Result<bool, KirbyError> {
        let un = self.unsplit();
        if un.len() <= 1 {
            for &k in &un {
                self.split[k] = true;
                self.blocks.push(Split::One(k));
            }
            return Ok(!un.is_empty());
        }
        let c = self.form.c1.clone();
        // exceptional class: framing -1 with c1 = ±1
        if let Some(&k) = un.iter().find(|&&k| self.q(k, k) == -1 && c[k].abs() == 1) {
            self.split_unit(k, &un)?;
            return Ok(true);
        }
        if let Some((a, b)) = self.find_hyperbolic(&un, true) {
            self.split_hyperbolic(a, b, &un)?;
            return Ok(true);
        }
        // a single slide that creates an exceptional class
        for &j in &un {
            for &k in &un {
                if j == k {
                    continue;
                }
                for s in [1, -1] {
                    let v = self.q(j, j) + 2 * s * self.q(j, k) + self.q(k, k);
                    if v == -1 && (c[j] + s * c[k]).abs() == 1 {
                        self.slide(j, k, s)?;
                        return Ok(true);
                    }
                }
            }
        }
        if let Some(&k) = un.iter().find(|&&k| self.q(k, k).abs() == 1) {
            self.split_unit(k, &un)?;
            return Ok(true);
        }
        if let Some((a, b)) = self.find_hyperbolic(&un, false) {
            self.split_hyperbolic(a, b, &un)?;
            return Ok(true);
        }
        Ok(false)
    }

    /// Orders blocks as non-unit scalars, hyperbolic pairs, `<+1>`, `<-1>`, and orients
    /// hyperbolic pairs to `[[0,1],[1,0]]` and scalar classes so that `c1` has sign
    /// `reference`.
    fn normalize(&mut self, reference: i64) -> Result<(), KirbyError> {
        let rank = |r: &Reducer, b: &Split| match *b {
            Split::One(k) if r.q(k, k) == 1 => 2,
            Split::One(k) if r.q(k, k) == -1 => 3,
            Split::One(_) => 0,
            Split::Two(..) => 1,
        };
        let mut blocks = self.blocks.clone();
        blocks.sort_by_key(|b| {
            let first = match *b {
                Split::One(k) => k,
                Split::Two(a, _) => a,
            };
            (rank(self, b), first)
        });
        let order: Vec<usize> = blocks
            .iter()
            .flat_map(|b| match *b {
                Split::One(k) => vec![k],
                Split::Two(a, b) => vec![a, b],
            })
            .collect();
        // pos[x]: current position of original index x; at[p]: original index at p
        let n = order.len();
        let mut pos: Vec<usize> = (0..n).collect();
        let mut at: Vec<usize> = (0..n).collect();
        for (target, &x) in order.iter().enumerate() {
            let cur = pos[x];
            if cur != target {
                self.emit(Move::Swap { i: target, j: cur })?;
                let y = at[target];
                at.swap(target, cur);
                pos[x] = target;
                pos[y] = cur;
            }
        }
        let mut p = 0;
        for b in &blocks {
            match b {
                Split::One(_) => {
                    let c = self.form.c1[p];
                    if c != 0 && c.signum() != reference {
                        self.emit(Move::Reverse { i: p })?;
                    }
                    p += 1;
                }
                Split::Two(..) => {
                    if self.q(p, p + 1) < 0 {
                        self.emit(Move::Reverse { i: p + 1 })?;
                    }
                    p += 2;
                }
            }
        }
        Ok(())
    }
}

/// Greedily splits the form into scalar blocks and hyperbolic pairs using handle slides,
/// then reorders and reorients to the canonical shape
/// `[d1] + ... + H + ... + <+1> + ... + <-1> + ...`.
///
/// Exceptional classes (framing −1, `c1 = ±1`) are split off first, then hyperbolic
/// pairs on which `c1` vanishes. Scalar classes are oriented so that `c1` takes the sign
/// of the first nonzero entry of the input `c1`. Replaying the returned script from the
/// input reproduces the returned form exactly.
pub fn reduce_to_blocks(m: &MarkedForm) -> Result<Reduction, KirbyError> {
    let n = m.dim();
    let mut r = Reducer {
        form: m.clone(),
        script: Vec::new(),
        split: vec![false; n],
        blocks: Vec::new(),
    };
    let reference = m.c1.iter().find(|&&c| c != 0).map_or(1, |c| c.signum());
    r.mark_existing();
    while r.split.iter().any(|s| !s) {
        if !r.step()? {
            return Err(KirbyError::ReductionIncomplete(Box::new(Reduction {
                form: r.form,
                script: MoveScript(r.script),
            })));
        }
    }
    r.normalize(reference)?;
    Ok(Reduction {
        form: r.form,
        script: MoveScript(r.script),
    })
}

/// Blows down every unlinked exceptional class (framing −1, `c1 = ±1`).
pub fn blow_down_exceptional(m: &MarkedForm) -> Result<Reduction, KirbyError> {
    let mut form = m.clone();
    let mut script = Vec::new();
    for i in (0..m.dim()).rev() {
        let isolated = (0..form.dim()).all(|t| t == i || form.q[i][t] == 0);
        if isolated && form.q[i][i] == -1 && form.c1[i].abs() == 1 {
            let mv = Move::Blowdown { i };
            form.apply_mut(&mv)?;
            script.push(mv);
        }
    }
    Ok(Reduction {
        form,
        script: MoveScript(script),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(q: Vec<Vec<i64>>, c1: Vec<i64>) -> MarkedForm {
        MarkedForm::unlabeled(q, c1).unwrap()
    }

    /// Pre-slide form of the (g, n) = (1, 4) handlebody, variant 0.
    fn honda_1_4() -> MarkedForm {
        form(
            vec![
                vec![0, 1, 1, 1, 1],
                vec![1, 0, -1, -1, -1],
                vec![1, -1, 0, -1, -1],
                vec![1, -1, -1, -3, -2],
                vec![1, -1, -1, -2, -3],
            ],
            vec![0, 0, 0, 1, 1],
        )
    }

    #[test]
    fn slide_matches_congruence() {
        let m = form(vec![vec![-1, 0], vec![0, -1]], vec![1, 1]);
        let s = handleslide(&m, 0, 1, Sign::Plus).unwrap();
        // E = I + E_{10}: new e0 = e0 + e1
        let e = vec![vec![Rat::one(), Rat::zero()], vec![Rat::one(), Rat::one()]];
        assert_eq!(s.to_qsym(), m.to_qsym().congruence(&e).unwrap());
        assert_eq!(s.q(), &[vec![-2, -1], vec![-1, -1]]);
        assert_eq!(s.c1(), &[2, 1]);
        assert_eq!(s.determinant(), m.determinant());
        assert!(matches!(
            handleslide(&m, 0, 0, Sign::Plus),
            Err(KirbyError::Precondition(_))
        ));
        assert!(matches!(
            handleslide(&m, 0, 5, Sign::Plus),
            Err(KirbyError::Index { .. })
        ));
    }

    #[test]
    fn blowdown_examples() {
        let e = form(vec![vec![-1]], vec![1]);
        assert_eq!(blowdown(&e, 0).unwrap().dim(), 0);
        let m = form(vec![vec![5, 0], vec![0, -1]], vec![3, -1]);
        let b = blowdown(&m, 1).unwrap();
        assert_eq!(b.q(), &[vec![5]]);
        assert_eq!(b.c1(), &[3]);
    }

    #[test]
    fn blowdown_preconditions() {
        let linked = form(vec![vec![5, 1], vec![1, -1]], vec![1, 1]);
        assert!(matches!(
            blowdown(&linked, 1),
            Err(KirbyError::Precondition(_))
        ));
        let framed = form(vec![vec![-2]], vec![0]);
        assert!(matches!(
            blowdown(&framed, 0),
            Err(KirbyError::Precondition(_))
        ));
        let wrong_c1 = form(vec![vec![-1]], vec![3]);
        assert!(matches!(
            blowdown(&wrong_c1, 0),
            Err(KirbyError::Precondition(_))
        ));
        assert!(matches!(
            blowdown(&wrong_c1, 1),
            Err(KirbyError::Index { .. })
        ));
    }

    #[test]
    fn blowup_blowdown_round_trip_keeps_d3() {
        let m = form(
            vec![vec![4, 0, 0], vec![0, 0, 1], vec![0, 1, 0]],
            vec![2, 0, 0],
        );
        let before = m.d3(2, 2).unwrap();
        let up = blowup(&m, Sign::Minus, 1).unwrap();
        assert_eq!(up.d3(2, 2).unwrap(), before);
        let down = blowdown(&up, 3).unwrap();
        assert_eq!(down, m);
        assert!(matches!(
            blowup(&m, Sign::Minus, 3),
            Err(KirbyError::Precondition(_))
        ));
    }

    #[test]
    fn script_text_round_trip() {
        let script = MoveScript(vec![
            Move::Slide {
                i: 3,
                j: 0,
                sign: Sign::Minus,
            },
            Move::Blowup {
                sign: Sign::Minus,
                c1: -1,
            },
            Move::Blowdown { i: 2 },
            Move::Swap { i: 0, j: 4 },
            Move::Reverse { i: 1 },
        ]);
        let text = script.to_string();
        assert_eq!(
            text,
            "slide 3 0 -\nblowup - -1\nblowdown 2\nswap 0 4\nreverse 1\n"
        );
        assert_eq!(text.parse::<MoveScript>().unwrap(), script);
        let with_comments = "# header\n\nslide 1 0 +  # first\n";
        assert_eq!(with_comments.parse::<MoveScript>().unwrap().len(), 1);
        assert!(matches!(
            "slide 1 0 *".parse::<MoveScript>(),
            Err(KirbyError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn block_form_input_is_untouched() {
        let m = form(
            vec![
                vec![4, 0, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 0, -1],
            ],
            vec![2, 0, 0, 1],
        );
        let r = reduce_to_blocks(&m).unwrap();
        assert!(r.script.is_empty());
        assert_eq!(r.form, m);
        assert_eq!(m.describe_blocks().unwrap(), "[4] + H + <-1>");
    }

    #[test]
    fn reduces_honda_1_2() {
        let m = form(
            vec![vec![0, 1, 1], vec![1, 0, -1], vec![1, -1, 0]],
            vec![0, 0, 0],
        );
        let r = reduce_to_blocks(&m).unwrap();
        assert_eq!(r.form.q(), &[vec![2, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
        assert_eq!(r.form.c1(), &[0, 0, 0]);
        assert_eq!(m.replay(&r.script).unwrap(), r.form);
    }

    #[test]
    fn reduces_honda_1_4() {
        let m = honda_1_4();
        let r = reduce_to_blocks(&m).unwrap();
        assert_eq!(r.form.describe_blocks().unwrap(), "[4] + H + 2<-1>");
        assert_eq!(r.form.c1(), &[2, 0, 0, 1, 1]);
        assert_eq!(m.replay(&r.script).unwrap(), r.form);
        assert_eq!(r.form.d3(2, 2).unwrap(), m.d3(2, 2).unwrap());
        assert_eq!(r.form.d3(2, 2).unwrap(), Rat::new(1, 2).unwrap());

        let down = blow_down_exceptional(&r.form).unwrap();
        assert_eq!(down.form.describe_blocks().unwrap(), "[4] + H");
        assert_eq!(down.script.len(), 2);
    }

    #[test]
    fn incomplete_reduction_reports_partial_form() {
        // positive definite E8-free even form with no unit or isotropic vectors
        let m = form(vec![vec![2, 1], vec![1, 2]], vec![0, 0]);
        match reduce_to_blocks(&m) {
            Err(KirbyError::ReductionIncomplete(partial)) => {
                assert_eq!(m.replay(&partial.script).unwrap(), partial.form);
            }
            other => panic!("expected incomplete reduction, got {other:?}"),
        }
    }

    #[test]
    fn describes_non_block_forms_as_none() {
        assert!(honda_1_4().blocks().is_none());
        assert_eq!(form(vec![], vec![]).describe_blocks().unwrap(), "0");
    }
}
