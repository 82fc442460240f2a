//! JSON form of polynomials:
//! `{"vars":["omega","beta","gamma","delta1",…],"terms":[{"coeff":…,"exps":[…]}]}`.

use serde_json::{json, Value};

use super::*;

pub trait PolyJson: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl<C: Coeff> PolyJson for Poly<C> {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .rev()
            .map(|(m, c)| json!({"coeff": c.to_json(), "exps": m.json_exps(self.ring.has_epsilon)}))
            .collect();
        json!({"vars": self.ring.var_names(), "terms": terms})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(msg.to_string());
        let vars: Vec<&str> = v
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing vars"))?
            .iter()
            .map(|x| x.as_str().ok_or_else(|| bad("var names must be strings")))
            .collect::<Result<_>>()?;
        if vars.len() < 3 {
            return Err(bad("too few vars"));
        }
        let coord = match vars[0] {
            "alpha" => Coord::Alpha,
            "omega" => Coord::Omega,
            other => return Err(bad(&format!("unknown first variable {other}"))),
        };
        if vars[1] != "beta" || vars[2] != "gamma" {
            return Err(bad("vars must start with main, beta, gamma"));
        }
        let has_epsilon = vars.last() == Some(&"epsilon");
        let n = vars.len() - 3 - usize::from(has_epsilon);
        for (i, name) in vars[3..3 + n].iter().enumerate() {
            if *name != format!("delta{}", i + 1) {
                return Err(bad(&format!("unexpected variable {name}")));
            }
        }
        let mut ring = RingDescriptor::new(n, coord)?;
        ring.has_epsilon = has_epsilon;
        let mut out = Poly::zero(ring);
        for t in v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?
        {
            let c = C::from_json(t.get("coeff").ok_or_else(|| bad("missing coeff"))?)?;
            let exps: Vec<u32> = t
                .get("exps")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing exps"))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|e| e as u32)
                        .ok_or_else(|| bad("exponents must be non-negative integers"))
                })
                .collect::<Result<_>>()?;
            if exps.len() != vars.len() {
                return Err(bad("exponent vector length differs from vars"));
            }
            let e = if has_epsilon { exps[3 + n] } else { 0 };
            out.add_term(
                Monomial::from_parts(exps[0], exps[1], exps[2], &exps[3..3 + n], e),
                c,
            );
        }
        Ok(out)
    }
}
