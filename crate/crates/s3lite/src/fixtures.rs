//! Pre-baked model objects for the case study. The rpart fixture ships
//! the residual vector of a regression tree for Sepal.Width on the
//! other iris columns (grown with the usual CART anova defaults); its
//! squared sum is 10.17245. The gbm and randomForest fixtures are small
//! hand-chosen vectors that exist to tell the three method bodies
//! apart. The randomForest fixture deliberately has no `residuals`
//! field, only `y` and `predicted`.

use indexmap::IndexMap;

use crate::value::Value;

const RPART_RESIDUALS_TSV: &str = include_str!("../assets/rpart_residuals.tsv");

pub fn rpart_residuals() -> Vec<f64> {
    RPART_RESIDUALS_TSV
        .lines()
        .skip(1) // header
        .filter(|l| !l.is_empty())
        .map(|l| l.parse().expect("bundled residual data is numeric"))
        .collect()
}

pub fn make_fixtures() -> Value {
    let mut rpart = IndexMap::new();
    rpart.insert(
        "residuals".to_string(),
        Value::numeric(rpart_residuals()),
    );
    let rpart = Value::record(rpart)
        .with_class(vec!["rpart".to_string()])
        .unwrap();

    let mut gbm = IndexMap::new();
    gbm.insert("residuals".to_string(), Value::numeric(vec![0.5, -0.5]));
    let gbm = Value::record(gbm)
        .with_class(vec!["gbm".to_string()])
        .unwrap();

    let mut rf = IndexMap::new();
    rf.insert("y".to_string(), Value::numeric(vec![1.0, 2.0, 3.0]));
    rf.insert("predicted".to_string(), Value::numeric(vec![1.0, 1.0, 1.0]));
    let rf = Value::record(rf)
        .with_class(vec!["randomForest".to_string()])
        .unwrap();

    let mut fields = IndexMap::new();
    fields.insert("rpart".to_string(), rpart);
    fields.insert("gbm".to_string(), gbm);
    fields.insert("randomForest".to_string(), rf);
    Value::record(fields)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rpart_residual_vector_reproduces_the_headline_rss() {
        let res = rpart_residuals();
        assert_eq!(res.len(), 150);
        // Independent fold over the shipped data.
        let rss: f64 = res.iter().map(|r| r * r).sum();
        assert!((rss - 10.17245).abs() < 5e-6, "rss = {rss}");
    }

    #[test]
    fn fixture_classes_and_fields() {
        let fx = make_fixtures();
        let fields = fx.as_record().unwrap();
        assert_eq!(fields["rpart"].get_class(), vec!["rpart"]);
        assert_eq!(fields["gbm"].get_class(), vec!["gbm"]);
        assert_eq!(fields["randomForest"].get_class(), vec!["randomForest"]);
        // The rf fixture must NOT carry residuals.
        let rf = fields["randomForest"].as_record().unwrap();
        assert!(!rf.contains_key("residuals"));
        assert_eq!(rf["y"].as_numeric().unwrap().len(), 3);
    }

    #[test]
    fn gbm_and_rf_expected_sums() {
        // 0.25 + 0.25 and 0 + 1 + 4, by hand.
        let fx = make_fixtures();
        let fields = fx.as_record().unwrap();
        let gbm_res = fields["gbm"].as_record().unwrap()["residuals"]
            .as_numeric()
            .unwrap()
            .to_vec();
        assert_eq!(gbm_res.iter().map(|r| r * r).sum::<f64>(), 0.5);
        let rf = fields["randomForest"].as_record().unwrap();
        let y = rf["y"].as_numeric().unwrap();
        let p = rf["predicted"].as_numeric().unwrap();
        let rss: f64 = y.iter().zip(p).map(|(a, b)| (a - b) * (a - b)).sum();
        assert_eq!(rss, 5.0);
    }
}
