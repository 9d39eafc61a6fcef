//! Quotients `G±` of a mirror-symmetric decorated path as α-chains, and the
//! loop-substituted path `G[θ]`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::{ExtendedValue, RationalFunction};
use crate::cospectral::{check_mirror, decorated_strong_cospectral, SignedSupport};
use crate::error::{Error, Result};
use crate::graph::{DecoratedPath, WeightedGraph};
use crate::spectral::{gadget_alphas, support_of, AlphaChain, SupportSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldedChain {
    pub sign: Sign,
    pub parity: Parity,
    #[serde(flatten)]
    pub chain: AlphaChain,
}

impl FoldedChain {
    pub fn alpha(&self) -> Result<RationalFunction> {
        self.chain.eval()
    }

    /// Zeros of the folded α at vertex 1.
    pub fn support(&self) -> Result<SupportSet> {
        support_of(&self.alpha()?)
    }
}

/// Chain for `G±` from the gadget α's (which must already be mirror-symmetric).
pub fn fold_alphas(alphas: &[RationalFunction], sign: Sign) -> Result<FoldedChain> {
    let n = alphas.len();
    if n < 2 {
        return Err(Error::Hypothesis("folding needs a path with at least 2 vertices".into()));
    }
    let k = n / 2;
    let parity = Parity::of(n);
    let chain = match parity {
        Parity::Even => {
            let mut terms = alphas[..k].to_vec();
            let one = Rational::one();
            // A loop of weight w at the root turns α into α − w.
            terms[k - 1] = match sign {
                Sign::Plus => terms[k - 1].sub_constant(&one),
                Sign::Minus => terms[k - 1].sub_constant(&-one),
            };
            AlphaChain::unit(terms)?
        }
        Parity::Odd => match sign {
            Sign::Minus => AlphaChain::unit(alphas[..k].to_vec())?,
            Sign::Plus => {
                let terms = alphas[..=k].to_vec();
                let mut couplings = vec![Rational::one(); k];
                couplings[k - 1] = rational::rat(2);
                AlphaChain::new(terms, couplings)?
            }
        },
    };
    Ok(FoldedChain {
        sign,
        parity,
        chain,
    })
}

pub fn fold(dp: &DecoratedPath, sign: Sign) -> Result<FoldedChain> {
    let alphas = check_mirror(dp)?;
    fold_alphas(&alphas, sign)
}

/// `Φ⁺` and `Φ⁻` of the path ends from the two folds.
pub fn support_split_decorated(dp: &DecoratedPath) -> Result<SignedSupport> {
    let report = decorated_strong_cospectral(dp)?;
    if !report.strongly_cospectral {
        return Err(Error::Hypothesis("path ends are not strongly cospectral".into()));
    }
    let alphas = gadget_alphas(dp)?;
    let plus = fold_alphas(&alphas, Sign::Plus)?.alpha()?;
    let minus = fold_alphas(&alphas, Sign::Minus)?.alpha()?;
    SignedSupport::from_polynomials(plus.numerator(), minus.numerator())
}

/// `G±` as a weighted graph when its weights are rational; the odd-case `G⁺`
/// carries an edge of weight √2 and is only available as a chain.
pub fn quotient_graph(dp: &DecoratedPath, sign: Sign) -> Result<WeightedGraph> {
    check_mirror(dp)?;
    let n = dp.len();
    if n < 2 {
        return Err(Error::Hypothesis("folding needs a path with at least 2 vertices".into()));
    }
    let k = n / 2;
    let half = DecoratedPath::new(dp.gadgets[..k].to_vec())?;
    match (Parity::of(n), sign) {
        (Parity::Even, _) => {
            let mut a = half.assemble();
            let r = a.roots[k - 1];
            let w = a.graph.loop_weight(r) + Rational::from_integer(sign.as_i8().into());
            a.graph.set_loop(r, w);
            Ok(a.graph)
        }
        (Parity::Odd, Sign::Minus) => Ok(half.assemble().graph),
        (Parity::Odd, Sign::Plus) => Err(Error::Hypothesis(
            "odd-case G+ has an edge of weight √2; export the α-chain instead".into(),
        )),
    }
}

/// The path `P_n` with loop weight `θ − α_i^{G_i}(θ)` at vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopedPath {
    #[serde(with = "rational::serde_rational")]
    pub theta: Rational,
    #[serde(with = "rational::serde_rational_vec")]
    pub loop_weights: Vec<Rational>,
}

impl LoopedPath {
    pub fn graph(&self) -> WeightedGraph {
        let mut g = WeightedGraph::path(self.loop_weights.len());
        for (v, w) in self.loop_weights.iter().enumerate() {
            g.set_loop(v, w.clone());
        }
        g
    }

    /// The chain `(x − w_1, …, x − w_n)`.
    pub fn chain(&self) -> Result<AlphaChain> {
        AlphaChain::unit(
            self.loop_weights
                .iter()
                .map(|w| RationalFunction::x().sub_constant(w))
                .collect(),
        )
    }
}

pub fn loopify(dp: &DecoratedPath, theta: &Rational) -> Result<LoopedPath> {
    let alphas = gadget_alphas(dp)?;
    let mut loop_weights = Vec::with_capacity(alphas.len());
    for (k, a) in alphas.iter().enumerate() {
        match a.eval_extended(theta) {
            ExtendedValue::Finite(v) => loop_weights.push(theta - v),
            ExtendedValue::Infinity => return Err(Error::LoopUndefined(k + 1)),
        }
    }
    Ok(LoopedPath {
        theta: theta.clone(),
        loop_weights,
    })
}
