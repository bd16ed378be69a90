//! Catalog of the positive-integer sequences that designate cobweb posets.
//!
//! `F_n` must be a positive integer for every `n >= 1`.  Index 0 is special:
//! it records the source convention for the value written under the root
//! (Fibonacci sources start `F_0 = 0`, everything else here uses `F_0 = 1`),
//! but consumers never multiply it in — the empty F-factorial is 1 and level
//! 0 of a cobweb poset always carries exactly one vertex.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceKind {
    /// `F_n = n`
    Natural,
    /// `F_n = 2n`
    Even,
    /// `F_n = 2n - 1`
    Odd,
    /// `F_n = k * n`
    Multiples(u64),
    /// `F_1 = F_2 = 1`, `F_{n+1} = F_n + F_{n-1}`; source convention `F_0 = 0`
    Fibonacci,
    /// q-integers `F_n = 1 + q + ... + q^{n-1}`
    GaussQ(u64),
    /// `F_n = c`
    Constant(u64),
    /// finite list of explicit terms for indices `1..=len`
    Custom(Vec<BigInt>),
}

/// An immutable, shareable view of one sequence.  Cloning is cheap and clones
/// share the same memo table; all methods are thread-safe.
#[derive(Debug, Clone)]
pub struct FSequence {
    kind: SequenceKind,
    root: u8,
    fib_memo: Arc<Mutex<Vec<BigInt>>>,
}

impl PartialEq for FSequence {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.root == other.root
    }
}
impl Eq for FSequence {}

impl FSequence {
    fn new(kind: SequenceKind, root: u8) -> Self {
        FSequence {
            kind,
            root,
            fib_memo: Arc::new(Mutex::new(vec![BigInt::zero(), BigInt::one()])),
        }
    }

    pub fn natural() -> Self {
        Self::new(SequenceKind::Natural, 1)
    }

    pub fn even() -> Self {
        Self::new(SequenceKind::Even, 1)
    }

    pub fn odd() -> Self {
        Self::new(SequenceKind::Odd, 1)
    }

    pub fn multiples(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("mult:k needs k >= 1".into()));
        }
        Ok(Self::new(SequenceKind::Multiples(k), 1))
    }

    pub fn fibonacci() -> Self {
        Self::new(SequenceKind::Fibonacci, 0)
    }

    pub fn gauss(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("gauss:q needs q >= 1".into()));
        }
        Ok(Self::new(SequenceKind::GaussQ(q), 1))
    }

    pub fn constant(c: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidParameter("const:c needs c >= 1".into()));
        }
        Ok(Self::new(SequenceKind::Constant(c), 1))
    }

    /// Explicit terms for indices `1..=terms.len()`; `root` is the value
    /// reported at index 0 and must be 0 or 1.
    pub fn custom<T: Into<BigInt>>(terms: Vec<T>, root: u8) -> Result<Self> {
        if root > 1 {
            return Err(Error::InvalidParameter(format!(
                "root convention must be 0 or 1, got {root}"
            )));
        }
        let terms: Vec<BigInt> = terms.into_iter().map(Into::into).collect();
        for (i, t) in terms.iter().enumerate() {
            if *t <= BigInt::zero() {
                return Err(Error::NonpositiveTerm {
                    index: i + 1,
                    value: t.clone(),
                });
            }
        }
        Ok(Self::new(SequenceKind::Custom(terms), root))
    }

    /// Parses the plain-text custom format: one positive decimal integer per
    /// line, with an optional first line `root=0` or `root=1` (default 1).
    /// Blank lines are ignored.
    pub fn custom_from_lines(text: &str) -> Result<Self> {
        let mut root = 1u8;
        let mut terms: Vec<BigInt> = Vec::new();
        let mut first_content = true;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if first_content {
                first_content = false;
                if let Some(rest) = line.strip_prefix("root=") {
                    root = match rest.trim() {
                        "0" => 0,
                        "1" => 1,
                        other => {
                            return Err(Error::SequenceFile(format!(
                                "line {}: root must be 0 or 1, got {:?}",
                                lineno + 1,
                                other
                            )))
                        }
                    };
                    continue;
                }
            }
            let value = BigInt::from_str(line).map_err(|_| {
                Error::SequenceFile(format!(
                    "line {}: {:?} is not a decimal integer",
                    lineno + 1,
                    line
                ))
            })?;
            terms.push(value);
        }
        if terms.is_empty() {
            return Err(Error::SequenceFile("no terms found".into()));
        }
        Self::custom(terms, root)
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    /// The value the source convention writes at index 0 (0 or 1).
    pub fn root_value(&self) -> u8 {
        self.root
    }

    /// `Some(len)` for finite custom sequences, `None` for the unbounded kinds.
    pub fn max_index(&self) -> Option<u64> {
        match &self.kind {
            SequenceKind::Custom(terms) => Some(terms.len() as u64),
            _ => None,
        }
    }

    /// `F_n`.  Index 0 reports the root convention; every other index yields
    /// a positive integer.  Only finite custom sequences can fail, and only
    /// with an out-of-range index.
    pub fn term(&self, n: u64) -> Result<BigInt> {
        if n == 0 {
            return Ok(BigInt::from(self.root));
        }
        match &self.kind {
            SequenceKind::Natural => Ok(BigInt::from(n)),
            SequenceKind::Even => Ok(BigInt::from(n) * 2),
            SequenceKind::Odd => Ok(BigInt::from(n) * 2 - 1),
            SequenceKind::Multiples(k) => Ok(BigInt::from(n) * BigInt::from(*k)),
            SequenceKind::Fibonacci => Ok(self.fibonacci_term(n)),
            SequenceKind::GaussQ(1) => Ok(BigInt::from(n)),
            SequenceKind::GaussQ(q) => {
                // 1 + q + ... + q^{n-1} = (q^n - 1) / (q - 1)
                let q = BigInt::from(*q);
                let num = q.pow(u32::try_from(n).expect("gauss exponent fits u32")) - 1;
                Ok(num / (q - 1))
            }
            SequenceKind::Constant(c) => Ok(BigInt::from(*c)),
            SequenceKind::Custom(terms) => {
                let idx = usize::try_from(n - 1).ok().filter(|i| *i < terms.len());
                match idx {
                    Some(i) => Ok(terms[i].clone()),
                    None => Err(Error::TermOutOfRange {
                        index: n,
                        len: terms.len(),
                    }),
                }
            }
        }
    }

    fn fibonacci_term(&self, n: u64) -> BigInt {
        let n = n as usize;
        let mut memo = self.fib_memo.lock().unwrap();
        while memo.len() <= n {
            let next = &memo[memo.len() - 1] + &memo[memo.len() - 2];
            memo.push(next);
        }
        memo[n].clone()
    }

    /// Terms `F_1..=F_n` in one call.
    pub fn terms(&self, n: u64) -> Result<Vec<BigInt>> {
        (1..=n).map(|i| self.term(i)).collect()
    }

    /// The spec string this sequence round-trips with (`"mult:3"` etc.);
    /// custom sequences all report `"custom"`.
    pub fn name(&self) -> String {
        match &self.kind {
            SequenceKind::Natural => "natural".into(),
            SequenceKind::Even => "even".into(),
            SequenceKind::Odd => "odd".into(),
            SequenceKind::Multiples(k) => format!("mult:{k}"),
            SequenceKind::Fibonacci => "fibonacci".into(),
            SequenceKind::GaussQ(q) => format!("gauss:{q}"),
            SequenceKind::Constant(c) => format!("const:{c}"),
            SequenceKind::Custom(_) => "custom".into(),
        }
    }
}

impl fmt::Display for FSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for FSequence {
    type Err = Error;

    /// Grammar: `natural | even | odd | mult:k | fibonacci | gauss:q | const:c`.
    fn from_str(spec: &str) -> Result<Self> {
        let bad = || Error::BadSequenceSpec(spec.to_string());
        match spec {
            "natural" => return Ok(FSequence::natural()),
            "even" => return Ok(FSequence::even()),
            "odd" => return Ok(FSequence::odd()),
            "fibonacci" => return Ok(FSequence::fibonacci()),
            _ => {}
        }
        let (head, param) = spec.split_once(':').ok_or_else(bad)?;
        let value: u64 = param.parse().map_err(|_| bad())?;
        match head {
            "mult" => FSequence::multiples(value),
            "gauss" => FSequence::gauss(value),
            "const" => FSequence::constant(value),
            _ => Err(bad()),
        }
    }
}
