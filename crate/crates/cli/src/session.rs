use plabic_core::cuts::{cut_mutation, validate_cut, Cut};
use plabic_core::mutation::{geometric_exchange, orbit_exchange};
use plabic_core::{Collection, CollectionJson, Error, KSubset, Quiver, QuiverJson};
use serde::Serialize;

use crate::{check_report, cut_list, CheckReport, CutList, DEFAULT_CUT_LIMIT};

#[derive(Debug, Clone, PartialEq)]
struct Snapshot {
    collection: Collection,
    cut: Option<Cut>,
}

/// One explorer session: the current collection, its cached quivers and report,
/// the working cut and an undo stack of earlier states.
#[derive(Debug, Clone)]
pub struct Session {
    collection: Collection,
    quiver: Quiver,
    inner: Quiver,
    report: CheckReport,
    cut: Option<Cut>,
    undo: Vec<Snapshot>,
    cut_limit: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StateJson {
    pub collection: CollectionJson,
    pub quiver: QuiverJson,
    pub report: CheckReport,
    pub undo_depth: usize,
}

impl Session {
    pub fn new(collection: Collection) -> Result<Session, Error> {
        Session::with_cut_limit(collection, DEFAULT_CUT_LIMIT)
    }

    pub fn with_cut_limit(collection: Collection, cut_limit: usize) -> Result<Session, Error> {
        let quiver = Quiver::from_collection(&collection)?;
        let inner = quiver.underline();
        let report = check_report(&collection, None, cut_limit)?;
        Ok(Session { collection, quiver, inner, report, cut: None, undo: Vec::new(), cut_limit })
    }

    pub fn collection(&self) -> &Collection {
        &self.collection
    }

    pub fn cut(&self) -> Option<&Cut> {
        self.cut.as_ref()
    }

    pub fn undo_depth(&self) -> usize {
        self.undo.len()
    }

    pub fn state(&self) -> StateJson {
        StateJson {
            collection: self.collection.to_json(),
            quiver: self.quiver.to_json(),
            report: self.report.clone(),
            undo_depth: self.undo.len(),
        }
    }

    pub fn report(&self) -> &CheckReport {
        &self.report
    }

    pub fn cuts(&self) -> CutList {
        cut_list(&self.inner, self.cut_limit)
    }

    /// Replaces collection and cut, recomputing every cache before touching `self`.
    fn replace(&mut self, collection: Collection, cut: Option<Cut>) -> Result<(), Error> {
        let quiver = Quiver::from_collection(&collection)?;
        let inner = quiver.underline();
        let report = check_report(&collection, cut.as_ref(), self.cut_limit)?;
        self.collection = collection;
        self.quiver = quiver;
        self.inner = inner;
        self.report = report;
        self.cut = cut;
        Ok(())
    }

    fn apply(&mut self, collection: Collection, cut: Option<Cut>) -> Result<(), Error> {
        let previous = Snapshot { collection: self.collection.clone(), cut: self.cut.clone() };
        self.replace(collection, cut)?;
        self.undo.push(previous);
        Ok(())
    }

    fn label(&self, elems: &[usize]) -> Result<KSubset, Error> {
        let label = KSubset::new(self.collection.n(), elems.iter().copied())?;
        if label.k() != self.collection.k() {
            return Err(Error::ParameterMismatch(format!("{label} is not a {}-subset", self.collection.k())));
        }
        Ok(label)
    }

    pub fn load(&mut self, collection: Collection) -> Result<(), Error> {
        self.apply(collection, None)
    }

    pub fn mutate(&mut self, elems: &[usize]) -> Result<(), Error> {
        let next = geometric_exchange(&self.collection, &self.label(elems)?)?;
        self.apply(next, None)
    }

    pub fn orbit_mutate(&mut self, elems: &[usize]) -> Result<(), Error> {
        let next = orbit_exchange(&self.collection, &self.label(elems)?)?;
        self.apply(next, None)
    }

    /// Sets the working cut. Any set of existing arrows is accepted; validity is
    /// part of the report.
    pub fn set_cut(&mut self, arrows: &[usize]) -> Result<(), Error> {
        if let Some(id) = arrows.iter().find(|&&id| self.inner.arrow_index(id).is_none()) {
            return Err(Error::Malformed(format!("no internal arrow with id {id}")));
        }
        self.apply(self.collection.clone(), Some(Cut::new(arrows.iter().copied())))
    }

    pub fn cut_mutate(&mut self, elems: &[usize]) -> Result<(), Error> {
        let cut = self.cut.as_ref().ok_or_else(|| Error::InvalidCut("no cut selected".into()))?;
        validate_cut(&self.inner, cut)?;
        let label = self.label(elems)?;
        let v = self.inner.vertex_index(&label).ok_or_else(|| Error::UnknownVertex(label.to_string()))?;
        let next = cut_mutation(&self.inner, cut, v)?;
        self.apply(self.collection.clone(), Some(next))
    }

    /// Returns `false` when there is nothing to undo.
    pub fn undo(&mut self) -> Result<bool, Error> {
        let Some(previous) = self.undo.pop() else { return Ok(false) };
        if let Err(e) = self.replace(previous.collection.clone(), previous.cut.clone()) {
            self.undo.push(previous);
            return Err(e);
        }
        Ok(true)
    }
}
