//! Seeded random classes for randomized testing and benchmarks.
//!
//! Members are drawn from small shared pools so that independently sampled
//! classes overlap on names, datatypes and values often enough to exercise
//! every branch of the exploiters.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exploiters::{union, Strategy};
use crate::model::{AnyClass, DataType, HeterogeneousClass, HomogeneousClass, Method, Property, Value};

const PROPERTY_POOL: [(&str, DataType); 12] = [
    ("wheels", DataType::Integer),
    ("doors", DataType::Integer),
    ("seats", DataType::Integer),
    ("year", DataType::Integer),
    ("color", DataType::Text),
    ("label", DataType::Text),
    ("model", DataType::Text),
    ("mass", DataType::Real),
    ("speed", DataType::Real),
    ("ratio", DataType::Real),
    ("active", DataType::Boolean),
    ("open", DataType::Boolean),
];

const METHOD_POOL: [&str; 7] = ["drive", "stop", "sail", "fly", "park", "load", "honk"];

const PARAM_NAMES: [&str; 3] = ["a", "b", "c"];

#[derive(Debug, Clone, Copy)]
pub struct SampleConfig {
    pub max_properties: usize,
    pub max_methods: usize,
    /// Probability that a property carries a value.
    pub valued: f64,
    /// Probability that a property deviates from its usual datatype.
    pub datatype_drift: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            max_properties: 8,
            max_methods: 4,
            valued: 0.6,
            datatype_drift: 0.1,
        }
    }
}

pub struct ClassSampler {
    rng: ChaCha8Rng,
    config: SampleConfig,
}

impl ClassSampler {
    pub fn new(seed: u64) -> Self {
        Self::with_config(seed, SampleConfig::default())
    }

    pub fn with_config(seed: u64, config: SampleConfig) -> Self {
        ClassSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            config,
        }
    }

    fn value(&mut self, datatype: DataType) -> Value {
        match datatype {
            DataType::Integer => Value::Integer(self.rng.gen_range(0..3)),
            DataType::Real => Value::Real(*[0.5, 1.0, 2.5].choose(&mut self.rng).unwrap()),
            DataType::Text => Value::Text((*["red", "blue", "green"].choose(&mut self.rng).unwrap()).into()),
            DataType::Boolean => Value::Boolean(self.rng.gen()),
        }
    }

    fn datatype(&mut self) -> DataType {
        *DataType::ALL.choose(&mut self.rng).unwrap()
    }

    fn property(&mut self, name: &str, usual: DataType) -> Property {
        let datatype = if self.rng.gen_bool(self.config.datatype_drift) {
            self.datatype()
        } else {
            usual
        };
        let value = self.rng.gen_bool(self.config.valued).then(|| self.value(datatype));
        Property {
            name: name.to_owned(),
            datatype,
            value,
        }
    }

    fn method(&mut self, name: &str) -> Method {
        let mut m = Method::new(name);
        let arity = *[0, 0, 1, 2].choose(&mut self.rng).unwrap();
        for p in &PARAM_NAMES[..arity] {
            let dt = if self.rng.gen_bool(0.7) { DataType::Real } else { self.datatype() };
            m = m.param(*p, dt);
        }
        if self.rng.gen_bool(0.3) {
            m = m.returns(DataType::Boolean);
        }
        if self.rng.gen_bool(0.2) {
            m = m.body_ref(format!("impl_{}", self.rng.gen_range(0..100)));
        }
        m
    }

    /// A valid homogeneous class.
    pub fn homogeneous(&mut self, name: &str) -> HomogeneousClass {
        let n_props = self.rng.gen_range(0..=self.config.max_properties.min(PROPERTY_POOL.len()));
        let n_methods = self.rng.gen_range(0..=self.config.max_methods.min(METHOD_POOL.len()));
        let props: Vec<_> = PROPERTY_POOL
            .choose_multiple(&mut self.rng, n_props)
            .copied()
            .collect();
        let mut spec: Vec<Property> = props.iter().map(|(n, d)| self.property(n, *d)).collect();
        let names: Vec<_> = METHOD_POOL
            .choose_multiple(&mut self.rng, n_methods)
            .copied()
            .collect();
        let sig: Vec<Method> = names.iter().map(|n| self.method(n)).collect();
        if spec.is_empty() && sig.is_empty() {
            let (n, d) = *PROPERTY_POOL.choose(&mut self.rng).unwrap();
            spec.push(self.property(n, d));
        }
        HomogeneousClass::new(name, spec, sig)
    }

    /// A valid heterogeneous class, built as the union of 2–3 sampled
    /// homogeneous classes.
    pub fn heterogeneous(&mut self, name: &str) -> HeterogeneousClass {
        loop {
            let k = self.rng.gen_range(2..=3);
            let parts: Vec<AnyClass> = (0..k)
                .map(|i| self.homogeneous(&format!("{name}_t{i}")).into())
                .collect();
            let outcome = union(&parts, Strategy::Keyed, name).expect("sampled classes are valid");
            if let AnyClass::Heterogeneous(h) = outcome.result {
                return h;
            }
        }
    }

    /// A homogeneous class, or with probability `heterogeneous` a
    /// heterogeneous one.
    pub fn class(&mut self, name: &str, heterogeneous: f64) -> AnyClass {
        if self.rng.gen_bool(heterogeneous) {
            self.heterogeneous(name).into()
        } else {
            self.homogeneous(name).into()
        }
    }

    /// Between `min` and `max` homogeneous classes named `C0`, `C1`, ….
    pub fn homogeneous_batch(&mut self, min: usize, max: usize) -> Vec<AnyClass> {
        let n = self.rng.gen_range(min..=max);
        (0..n).map(|i| self.homogeneous(&format!("C{i}")).into()).collect()
    }

    /// Like [`Self::homogeneous_batch`], mixing in heterogeneous classes.
    pub fn mixed_batch(&mut self, min: usize, max: usize, heterogeneous: f64) -> Vec<AnyClass> {
        let n = self.rng.gen_range(min..=max);
        (0..n).map(|i| self.class(&format!("C{i}"), heterogeneous)).collect()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
