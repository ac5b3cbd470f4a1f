use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::relations::{BinRel, Partition, RelationLiteral};

/// Upper bound on violations kept in one report; `instances_checked` still
/// counts everything.
pub const MAX_VIOLATIONS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Hypothesis,
    Modularity,
    Subrel,
    Subrelpiu,
    Wtip,
    Rr,
    Statement,
}

impl Theorem {
    /// The four conclusions checked by [`sweep`](crate::theorems::sweep).
    pub const CONCLUSIONS: [Theorem; 4] = [
        Theorem::Subrel,
        Theorem::Subrelpiu,
        Theorem::Wtip,
        Theorem::Rr,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::Hypothesis => "hypothesis",
            Theorem::Modularity => "modularity",
            Theorem::Subrel => "subrel",
            Theorem::Subrelpiu => "subrelpiu",
            Theorem::Wtip => "wtip",
            Theorem::Rr => "rr",
            Theorem::Statement => "statement",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hypothesis" => Theorem::Hypothesis,
            "modularity" => Theorem::Modularity,
            "subrel" => Theorem::Subrel,
            "subrelpiu" => Theorem::Subrelpiu,
            "wtip" => Theorem::Wtip,
            "rr" => Theorem::Rr,
            "statement" => Theorem::Statement,
            _ => return Err(Error::Precondition(format!("unknown theorem '{s}'"))),
        })
    }
}

/// Which half of an equality failed. `Forward` is `left ⊆ right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

/// One inclusion inside a theorem. Equalities are split into two
/// directed inclusions so a violation names exactly what broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// `β(γ∘δ∘γ) ⊆ βγ + δ` on a subsquare.
    Hypothesis,
    /// `β(γ + δ) ⊆ βγ + δ` on a subsquare.
    Modularity,
    /// `α(R∘S) ⊆ α·cl(R∪S⁻) + α·cl(R⁻∪S)`.
    SubrelInclusion,
    /// `α(R+S) ⊆ α·cl(R∪S⁻) + α·cl(R⁻∪S)`.
    SubrelpiuInclusion,
    /// `α·cl(R∪S⁻) + α·cl(R⁻∪S) = α·cl(R∪S) + α·cl(R⁻∪S⁻)`.
    SubrelpiuFirstEq(Direction),
    /// `α·cl(R∪S) + α·cl(R⁻∪S⁻) = α(Cg(R) + Cg(S))`.
    SubrelpiuSecondEq(Direction),
    /// `αΘ* = (αΘ)*`; the backward half is the easy one.
    Wtip(Direction),
    /// `α(R+R⁻) ⊆ α(cl(R) + cl(R)⁻)`.
    RrInclusion,
    /// `α(cl(R) + cl(R)⁻) = α·cl(R) + α·cl(R)⁻`.
    RrFirstEq(Direction),
    /// `α·cl(R) + α·cl(R)⁻ = α·Cg(R)`.
    RrSecondEq(Direction),
    /// A user statement; `Forward` for `<=`.
    Statement(Direction),
}

impl Claim {
    pub fn theorem(self) -> Theorem {
        match self {
            Claim::Hypothesis => Theorem::Hypothesis,
            Claim::Modularity => Theorem::Modularity,
            Claim::SubrelInclusion => Theorem::Subrel,
            Claim::SubrelpiuInclusion
            | Claim::SubrelpiuFirstEq(_)
            | Claim::SubrelpiuSecondEq(_) => Theorem::Subrelpiu,
            Claim::Wtip(_) => Theorem::Wtip,
            Claim::RrInclusion | Claim::RrFirstEq(_) | Claim::RrSecondEq(_) => Theorem::Rr,
            Claim::Statement(_) => Theorem::Statement,
        }
    }
}

fn dir_str(d: Direction) -> &'static str {
    match d {
        Direction::Forward => "forward",
        Direction::Backward => "backward",
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Claim::Hypothesis => write!(f, "hypothesis.inclusion"),
            Claim::Modularity => write!(f, "modularity.law"),
            Claim::SubrelInclusion => write!(f, "subrel.inclusion"),
            Claim::SubrelpiuInclusion => write!(f, "subrelpiu.inclusion"),
            Claim::SubrelpiuFirstEq(d) => write!(f, "subrelpiu.eq1.{}", dir_str(d)),
            Claim::SubrelpiuSecondEq(d) => write!(f, "subrelpiu.eq2.{}", dir_str(d)),
            Claim::Wtip(d) => write!(f, "wtip.eq.{}", dir_str(d)),
            Claim::RrInclusion => write!(f, "rr.inclusion"),
            Claim::RrFirstEq(d) => write!(f, "rr.eq1.{}", dir_str(d)),
            Claim::RrSecondEq(d) => write!(f, "rr.eq2.{}", dir_str(d)),
            Claim::Statement(d) => write!(f, "statement.{}", dir_str(d)),
        }
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('.').collect();
        let dir = |p: &str| match p {
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            _ => Err(Error::Precondition(format!("unknown claim '{s}'"))),
        };
        Ok(match parts.as_slice() {
            ["hypothesis", "inclusion"] => Claim::Hypothesis,
            ["modularity", "law"] => Claim::Modularity,
            ["subrel", "inclusion"] => Claim::SubrelInclusion,
            ["subrelpiu", "inclusion"] => Claim::SubrelpiuInclusion,
            ["subrelpiu", "eq1", d] => Claim::SubrelpiuFirstEq(dir(d)?),
            ["subrelpiu", "eq2", d] => Claim::SubrelpiuSecondEq(dir(d)?),
            ["wtip", "eq", d] => Claim::Wtip(dir(d)?),
            ["rr", "inclusion"] => Claim::RrInclusion,
            ["rr", "eq1", d] => Claim::RrFirstEq(dir(d)?),
            ["rr", "eq2", d] => Claim::RrSecondEq(dir(d)?),
            ["statement", d] => Claim::Statement(dir(d)?),
            _ => return Err(Error::Precondition(format!("unknown claim '{s}'"))),
        })
    }
}

impl Serialize for Claim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Claim {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The concrete value bound to one quantified symbol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundValue {
    Congruence(Partition),
    Relation(RelationLiteral),
    Pairs { pairs: Vec<[usize; 2]> },
}

impl BoundValue {
    pub fn relation(r: &BinRel) -> Self {
        BoundValue::Relation(r.to_literal())
    }

    pub fn pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        BoundValue::Pairs {
            pairs: pairs.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    /// The value as a relation; congruences convert to their equivalence.
    pub fn to_relation(&self) -> Result<BinRel> {
        match self {
            BoundValue::Congruence(p) => Ok(p.to_relation()),
            BoundValue::Relation(lit) => BinRel::from_literal(lit),
            BoundValue::Pairs { .. } => {
                Err(Error::Precondition("pair list is not a relation".into()))
            }
        }
    }

    pub fn as_partition(&self) -> Result<Partition> {
        match self {
            BoundValue::Congruence(p) => Ok(p.clone()),
            other => Partition::from_relation(&other.to_relation()?),
        }
    }

    pub fn as_pairs(&self) -> Result<Vec<(usize, usize)>> {
        match self {
            BoundValue::Pairs { pairs } => Ok(pairs.iter().map(|p| (p[0], p[1])).collect()),
            _ => Err(Error::Precondition("expected a pair list".into())),
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Congruence(p) => write!(f, "{p}"),
            BoundValue::Relation(lit) => {
                write!(f, "{{")?;
                for (i, [a, b]) in lit.pairs.iter().filter(|p| p[0] != p[1]).enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "({a},{b})")?;
                }
                let refl = (0..lit.size).all(|x| lit.pairs.contains(&[x, x]));
                write!(f, "}}{}", if refl { " ∪ Δ" } else { "" })
            }
            BoundValue::Pairs { pairs } => {
                let items: Vec<String> = pairs.iter().map(|[a, b]| format!("({a},{b})")).collect();
                write!(f, "[{}]", items.join(" "))
            }
        }
    }
}

/// Symbol name to value, ordered by name.
pub type Binding = BTreeMap<String, BoundValue>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub binding: Binding,
    /// A pair in the left side of `failed_claim` missing from its right side.
    pub missing_pair: [usize; 2],
    pub failed_claim: Claim,
}

impl Violation {
    pub fn get(&self, symbol: &str) -> Result<&BoundValue> {
        self.binding
            .get(symbol)
            .ok_or_else(|| Error::Precondition(format!("binding lacks '{symbol}'")))
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at ({}, {})",
            self.failed_claim, self.missing_pair[0], self.missing_pair[1]
        )?;
        for (k, v) in &self.binding {
            write!(f, "\n    {k} = {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub algebra: String,
    pub theorem: Theorem,
    pub result: Outcome,
    pub instances_checked: u64,
    pub violations: Vec<Violation>,
    pub elapsed: Duration,
}

impl CheckReport {
    /// Assembles a report; `result` follows from whether `violations` is empty.
    pub fn new(
        algebra: impl Into<String>,
        theorem: Theorem,
        instances_checked: u64,
        violations: Vec<Violation>,
        elapsed: Duration,
    ) -> Self {
        let result = if violations.is_empty() {
            Outcome::Holds
        } else {
            Outcome::Fails
        };
        CheckReport {
            algebra: algebra.into(),
            theorem,
            result,
            instances_checked,
            violations,
            elapsed,
        }
    }

    pub fn holds(&self) -> bool {
        self.result == Outcome::Holds
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ReportDoc::from(self)).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ReportDoc =
            serde_json::from_str(text).map_err(|e| Error::Precondition(e.to_string()))?;
        let mut report = CheckReport::new(
            doc.algebra,
            doc.theorem,
            doc.instances_checked,
            doc.violations,
            Duration::from_millis(doc.elapsed_ms),
        );
        if report.result != doc.result {
            return Err(Error::Precondition(
                "result disagrees with violations".into(),
            ));
        }
        report.result = doc.result;
        Ok(report)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let result = match self.result {
            Outcome::Holds => "holds",
            Outcome::Fails => "FAILS",
        };
        write!(
            f,
            "{}: {} {} ({} instances, {} ms)",
            self.algebra,
            self.theorem,
            result,
            self.instances_checked,
            self.elapsed.as_millis()
        )?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ReportDoc {
    algebra: String,
    theorem: Theorem,
    result: Outcome,
    instances_checked: u64,
    violations: Vec<Violation>,
    elapsed_ms: u64,
}

impl From<&CheckReport> for ReportDoc {
    fn from(r: &CheckReport) -> Self {
        ReportDoc {
            algebra: r.algebra.clone(),
            theorem: r.theorem,
            result: r.result,
            instances_checked: r.instances_checked,
            violations: r.violations.clone(),
            elapsed_ms: r.elapsed.as_millis() as u64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_names_round_trip() {
        let claims = [
            Claim::Hypothesis,
            Claim::Modularity,
            Claim::SubrelInclusion,
            Claim::SubrelpiuInclusion,
            Claim::SubrelpiuFirstEq(Direction::Backward),
            Claim::SubrelpiuSecondEq(Direction::Forward),
            Claim::Wtip(Direction::Forward),
            Claim::RrInclusion,
            Claim::RrFirstEq(Direction::Forward),
            Claim::RrSecondEq(Direction::Backward),
            Claim::Statement(Direction::Backward),
        ];
        for c in claims {
            assert_eq!(c.to_string().parse::<Claim>().unwrap(), c);
        }
        assert!("wtip.eq.sideways".parse::<Claim>().is_err());
    }

    #[test]
    fn report_json_schema() {
        let mut binding = Binding::new();
        binding.insert("alpha".into(), BoundValue::Congruence(Partition::full(2)));
        binding.insert("R".into(), BoundValue::relation(&BinRel::diagonal(2)));
        let v = Violation {
            binding,
            missing_pair: [0, 1],
            failed_claim: Claim::Wtip(Direction::Forward),
        };
        let r = CheckReport::new("z2", Theorem::Wtip, 3, vec![v], Duration::from_millis(5));
        assert_eq!(r.result, Outcome::Fails);
        let text = r.to_json();
        assert_eq!(
            text,
            concat!(
                r#"{"algebra":"z2","theorem":"wtip","result":"fails","instances_checked":3,"#,
                r#""violations":[{"binding":{"R":{"kind":"relation","size":2,"pairs":[[0,0],[1,1]],"reflexive_close":false},"#,
                r#""alpha":{"kind":"congruence","size":2,"blocks":[[0,1]]}},"#,
                r#""missing_pair":[0,1],"failed_claim":"wtip.eq.forward"}],"elapsed_ms":5}"#
            )
        );
        assert_eq!(CheckReport::from_json(&text).unwrap(), r);
    }
}
