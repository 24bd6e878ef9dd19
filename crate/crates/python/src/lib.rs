//! Python bindings. Integers map to `int`, rationals to `fractions.Fraction`.

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use supercong_core::arith::{self, PrimePower};
use supercong_core::suite::{self, congruence_registry, identity_registry};
use supercong_core::{hypergeo, sequences, CheckOutcome as CoreOutcome, Error};

fn value_error(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn prime_power(p: u64, e: u32) -> PyResult<PrimePower> {
    PrimePower::new(p, e).map_err(value_error)
}

/// An element of Z / p^e Z.
#[pyclass(frozen, eq, hash, skip_from_py_object, name = "Residue", module = "supercong")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyResidue(arith::Residue);

#[pymethods]
impl PyResidue {
    #[new]
    fn new(value: BigInt, p: u64, e: u32) -> PyResult<Self> {
        Ok(Self(arith::Residue::new(&value, &prime_power(p, e)?)))
    }

    #[getter]
    fn value(&self) -> BigInt {
        self.0.value().clone()
    }

    /// Representative in (-m/2, m/2].
    #[getter]
    fn signed(&self) -> BigInt {
        self.0.signed()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.modulus().prime()
    }

    #[getter]
    fn e(&self) -> u32 {
        self.0.modulus().exponent()
    }

    #[getter]
    fn modulus(&self) -> BigInt {
        self.0.modulus().modulus().clone()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_add(&other.0).map(Self).map_err(value_error)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(Self).map_err(value_error)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(Self).map_err(value_error)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __pow__(&self, exp: u64, _modulo: Option<Py<PyAny>>) -> Self {
        Self(self.0.pow(exp))
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(Self).map_err(value_error)
    }

    fn __int__(&self) -> BigInt {
        self.0.value().clone()
    }

    fn __repr__(&self) -> String {
        format!("Residue({}, {}, {})", self.0.value(), self.p(), self.e())
    }
}

/// Parameters of a truncated hypergeometric series.
#[pyclass(frozen, name = "HypergeometricSpec", module = "supercong")]
struct PyHypergeometricSpec(hypergeo::HypergeometricSpec);

#[pymethods]
impl PyHypergeometricSpec {
    #[new]
    fn new(
        upper: Vec<BigRational>,
        lower: Vec<BigRational>,
        argument: BigRational,
        truncation: u64,
    ) -> PyResult<Self> {
        hypergeo::HypergeometricSpec::new(upper, lower, argument, truncation)
            .map(Self)
            .map_err(value_error)
    }

    fn evaluate(&self) -> PyResult<BigRational> {
        self.0.evaluate().map_err(value_error)
    }

    #[getter]
    fn truncation(&self) -> u64 {
        self.0.truncation()
    }
}

/// One checked instance, with both sides rendered as decimal strings.
#[pyclass(frozen, get_all, name = "CheckOutcome", module = "supercong")]
struct PyCheckOutcome {
    check: String,
    instance: String,
    modulus: String,
    lhs: String,
    rhs: String,
    passed: bool,
}

impl From<&CoreOutcome> for PyCheckOutcome {
    fn from(o: &CoreOutcome) -> Self {
        Self {
            check: o.check.clone(),
            instance: o.instance.to_string(),
            modulus: o.modulus_label(),
            lhs: o.lhs.to_string(),
            rhs: o.rhs.to_string(),
            passed: o.pass,
        }
    }
}

#[pymethods]
impl PyCheckOutcome {
    fn __repr__(&self) -> String {
        format!(
            "CheckOutcome({} {} mod {}: {} vs {}, passed={})",
            self.check, self.instance, self.modulus, self.lhs, self.rhs, self.passed
        )
    }
}

fn outcomes(v: Vec<CoreOutcome>) -> Vec<PyCheckOutcome> {
    v.iter().map(PyCheckOutcome::from).collect()
}

#[pyfunction]
fn binomial(x: BigInt, n: i64) -> BigInt {
    arith::binomial(&x, n)
}

#[pyfunction]
fn factorial(n: u64) -> BigInt {
    arith::factorial(n)
}

#[pyfunction]
fn pochhammer(x: BigRational, k: u64) -> BigRational {
    arith::pochhammer(&x, k)
}

#[pyfunction]
fn is_prime(n: u64) -> bool {
    arith::is_prime(n)
}

#[pyfunction]
fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    arith::primes_between(lo, hi)
}

#[pyfunction]
fn mod_inverse(a: BigInt, p: u64, e: u32) -> PyResult<PyResidue> {
    arith::mod_inverse(&a, &prime_power(p, e)?)
        .map(PyResidue)
        .map_err(value_error)
}

#[pyfunction]
fn reduce_rational(r: BigRational, p: u64, e: u32) -> PyResult<PyResidue> {
    arith::reduce_rational(&r, &prime_power(p, e)?)
        .map(PyResidue)
        .map_err(value_error)
}

#[pyfunction]
fn euler_numbers(max_index: usize) -> Vec<BigInt> {
    sequences::euler_numbers(max_index).values().to_vec()
}

#[pyfunction]
fn euler_polynomial(n: usize, x: BigRational) -> BigRational {
    sequences::euler_polynomial(&sequences::euler_numbers(n), n, &x)
}

#[pyfunction]
fn harmonic2(k: u64) -> BigRational {
    sequences::harmonic2(k)
}

#[pyfunction]
fn convolution_direct(n: u64) -> BigInt {
    hypergeo::convolution_direct(n)
}

#[pyfunction]
fn convolution_via_id1(n: u64) -> BigRational {
    hypergeo::convolution_via_id1(n)
}

#[pyfunction]
fn convolution_via_sun(n: u64) -> BigInt {
    hypergeo::convolution_via_sun(n)
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn check_transform(
    n: u64,
    a: BigRational,
    b: BigRational,
    c: BigRational,
    d: BigRational,
    e: BigRational,
    f: BigRational,
) -> PyResult<PyCheckOutcome> {
    let params = hypergeo::TransformParams { a, b, c, d, e, f };
    hypergeo::check_transform(n, &params)
        .map(|o| PyCheckOutcome::from(&o))
        .map_err(value_error)
}

#[pyfunction]
fn check_chaundy_bullard(n: u64, m: u64) -> PyCheckOutcome {
    PyCheckOutcome::from(&hypergeo::check_chaundy_bullard(n, m))
}

/// `(x, y)` with `p = x^2 + y^2`, `x = 1 mod 4`, `y` even and positive.
#[pyfunction]
fn two_squares(p: u64) -> PyResult<(i64, i64)> {
    suite::two_squares(p).map(|t| (t.x, t.y)).map_err(value_error)
}

#[pyfunction]
fn congruence_ids() -> Vec<String> {
    congruence_registry().into_iter().map(|s| s.id).collect()
}

#[pyfunction]
fn identity_ids() -> Vec<String> {
    identity_registry().iter().map(|s| s.id.to_string()).collect()
}

/// Checks the named congruences (all when `ids` is None) at every admissible prime.
#[pyfunction]
#[pyo3(signature = (primes, ids=None, jobs=1))]
fn run_suite(
    py: Python<'_>,
    primes: Vec<u64>,
    ids: Option<Vec<String>>,
    jobs: usize,
) -> PyResult<Vec<PyCheckOutcome>> {
    let specs = match ids {
        None => congruence_registry(),
        Some(ids) => ids
            .iter()
            .map(|id| suite::find_congruence(id).ok_or_else(|| Error::UnknownCheck(id.clone())))
            .collect::<Result<Vec<_>, _>>()
            .map_err(value_error)?,
    };
    let max = primes.iter().copied().max().unwrap_or(0);
    let out = py.detach(|| suite::Engine::new(max).run(&specs, &primes, jobs.max(1)));
    Ok(outcomes(out))
}

/// Runs the named identities (all when `ids` is None) up to `bound`.
#[pyfunction]
#[pyo3(signature = (ids=None, bound=60, jobs=1))]
fn run_identities(
    py: Python<'_>,
    ids: Option<Vec<String>>,
    bound: u64,
    jobs: usize,
) -> PyResult<Vec<PyCheckOutcome>> {
    let specs = match ids {
        None => identity_registry(),
        Some(ids) => ids
            .iter()
            .map(|id| suite::find_identity(id).ok_or_else(|| Error::UnknownCheck(id.clone())))
            .collect::<Result<Vec<_>, _>>()
            .map_err(value_error)?,
    };
    let out = py.detach(|| suite::run_identities(&specs, bound, jobs.max(1)));
    Ok(outcomes(out))
}

#[pymodule]
fn supercong(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyResidue>()?;
    m.add_class::<PyHypergeometricSpec>()?;
    m.add_class::<PyCheckOutcome>()?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(factorial, m)?)?;
    m.add_function(wrap_pyfunction!(pochhammer, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(primes_between, m)?)?;
    m.add_function(wrap_pyfunction!(mod_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_rational, m)?)?;
    m.add_function(wrap_pyfunction!(euler_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(euler_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic2, m)?)?;
    m.add_function(wrap_pyfunction!(convolution_direct, m)?)?;
    m.add_function(wrap_pyfunction!(convolution_via_id1, m)?)?;
    m.add_function(wrap_pyfunction!(convolution_via_sun, m)?)?;
    m.add_function(wrap_pyfunction!(check_transform, m)?)?;
    m.add_function(wrap_pyfunction!(check_chaundy_bullard, m)?)?;
    m.add_function(wrap_pyfunction!(two_squares, m)?)?;
    m.add_function(wrap_pyfunction!(congruence_ids, m)?)?;
    m.add_function(wrap_pyfunction!(identity_ids, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(run_identities, m)?)?;
    Ok(())
}
