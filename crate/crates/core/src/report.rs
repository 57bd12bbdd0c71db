//! Serialization of reports. Scalars are written as their canonical strings
//! (`"-3/2"`, `"42"`), never as JSON numbers, so output is exact and stable.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::catalog::{Counterexample, FuzzReport, IdentityTally, VerificationReport};
use crate::lemma::LemmaReport;
use crate::scalar::Scalar;
use crate::sequences::HoradamParams;
use crate::theorems::SumReport;

/// `a, b, p, q` as canonical strings.
pub struct ParamsView<'a, T>(pub &'a HoradamParams<T>);

impl<T: Scalar> Serialize for ParamsView<'_, T> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Params", 4)?;
        st.serialize_field("a", &self.0.a().to_string())?;
        st.serialize_field("b", &self.0.b().to_string())?;
        st.serialize_field("p", &self.0.p().to_string())?;
        st.serialize_field("q", &self.0.q().to_string())?;
        st.end()
    }
}

impl<T: Scalar> Serialize for HoradamParams<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ParamsView(self).serialize(ser)
    }
}

impl<T: Scalar> Serialize for VerificationReport<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("VerificationReport", 6)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("assignment", &self.assignment)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("lhs", &self.lhs.to_string())?;
        st.serialize_field("rhs", &self.rhs.to_string())?;
        st.serialize_field("equal", &self.equal)?;
        st.end()
    }
}

impl<T: Scalar> Serialize for Counterexample<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Counterexample", 5)?;
        st.serialize_field("trial", &self.trial)?;
        st.serialize_field("assignment", &self.report.assignment)?;
        st.serialize_field("params", &self.report.params)?;
        st.serialize_field("lhs", &self.report.lhs.to_string())?;
        st.serialize_field("rhs", &self.report.rhs.to_string())?;
        st.end()
    }
}

impl<T: Scalar> Serialize for IdentityTally<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("IdentityTally", 4)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("trials", &self.trials)?;
        st.serialize_field("passed", &self.passed)?;
        st.serialize_field("counterexample", &self.counterexample)?;
        st.end()
    }
}

impl<T: Scalar> Serialize for FuzzReport<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("FuzzReport", 5)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("trials", &self.trials)?;
        st.serialize_field("sampler", &self.sampler)?;
        st.serialize_field("all_passed", &self.all_passed())?;
        st.serialize_field("identities", &self.tallies)?;
        st.end()
    }
}

impl<T: Scalar> Serialize for SumReport<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("SumReport", 10)?;
        st.serialize_field("selector", &self.selector)?;
        st.serialize_field("assignment", &self.assignment)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("direct", &self.direct.to_string())?;
        st.serialize_field("closed_form", &self.closed_form.to_string())?;
        st.serialize_field("lemma", &self.lemma.to_string())?;
        st.serialize_field("lemma_id", &self.lemma_id.to_string())?;
        st.serialize_field("equal", &self.equal)?;
        st.serialize_field("outside_hypothesis", &self.outside_hypothesis)?;
        st.end()
    }
}

impl<T: Scalar> Serialize for LemmaReport<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("LemmaReport", 8)?;
        st.serialize_field("lemma", &self.lemma.to_string())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("c", &self.c)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("lhs", &self.lhs.to_string())?;
        st.serialize_field("rhs", &self.rhs.to_string())?;
        st.serialize_field("equal", &self.equal)?;
        st.end()
    }
}
