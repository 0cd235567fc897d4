"""Regenerate src/headergen/data/taxonomy.json from the shipped stub DB.

Rules are curated by hand below; the script only expands per-method rules
over every stubbed class so the JSON stays in sync with the stubs.

    python3 tools/build_taxonomy.py
"""

import json
from pathlib import Path

from headergen.stubs import default_stub_dir, load_stub_db

OUT = Path(__file__).resolve().parents[1] / "src" / "headergen" / "data" / "taxonomy.json"

LL, VIS = "Library Loading", "Visualization"
DL, EDA, DCF, SPLIT = ("Data Loading", "Exploratory Data Analysis", "Data Cleaning Filtering",
                       "Data Sub-sampling and Train-test Splitting")
FT, FS = "Feature Transformation", "Feature Selection"
MT, TUNE, VAL = "Model Training", "Model Parameter Tuning", "Model Validation and Assembling"

CATEGORIES = {
    "Generic Operations": [LL, VIS],
    "Data Preparation and Exploration": [DL, EDA, DCF, SPLIT],
    "Feature Engineering": [FT, FS],
    "Model Building and Training": [MT, TUNE, VAL],
}

PREFIX = {
    "matplotlib.*": [VIS],
    "seaborn.*": [VIS],
    "pandas.plotting.*": [VIS],
    # pandas plotting runs on the dataset itself, so it is exploration as well
    "pandas.plotting._core.PlotAccessor.*": [VIS, EDA],
    "sklearn.datasets.*": [DL],
    "sklearn.metrics.*": [VAL],
    "keras.src.layers.*": [MT],
    "keras.src.optimizers.*": [MT],
    "keras.src.callbacks.*": [MT],
    "pandas.core.strings.accessor.StringMethods.*": [DCF],
}

EXACT = {
    "seaborn.utils.load_dataset": [DL],
    "io.open": [DL],
    "pandas.io.parsers.readers.read_csv": [DL],
    "pandas.io.parsers.readers.read_table": [DL],
    "pandas.io.excel._base.read_excel": [DL],
    "pandas.io.json._json.read_json": [DL],
    "pandas.io.parquet.read_parquet": [DL],
    "keras.src.saving.saving_api.load_model": [MT],
    "keras.src.layers.core.input_layer.Input": [MT],
    "keras.src.utils.numerical_utils.to_categorical": [FT],
    "pandas.core.dtypes.missing.isna": [DCF],
    "pandas.core.dtypes.missing.notna": [DCF],
    "pandas.core.algorithms.unique": [EDA],
    "pandas.core.reshape.concat.concat": [DCF],
    "pandas.core.reshape.merge.merge": [DCF],
    "pandas.core.reshape.melt.melt": [FT],
    "pandas.core.reshape.encoding.get_dummies": [FT],
    "pandas.core.reshape.tile.cut": [FT],
    "pandas.core.reshape.tile.qcut": [FT],
    "pandas.core.reshape.pivot.crosstab": [EDA],
    "pandas.core.reshape.pivot.pivot_table": [EDA],
    "pandas.core.tools.datetimes.to_datetime": [FT],
    "pandas.core.tools.numeric.to_numeric": [FT],
    "sklearn.model_selection._split.train_test_split": [SPLIT],
    "sklearn.model_selection._validation.cross_val_score": [VAL],
    "sklearn.model_selection._validation.cross_validate": [VAL],
    "sklearn.model_selection._validation.cross_val_predict": [VAL],
    "sklearn.pipeline.make_pipeline": [MT],
    "sklearn.preprocessing._data.normalize": [FT],
    "sklearn.preprocessing._data.scale": [FT],
}

NUMPY = {
    FT: "absolute ceil clip cos exp exp2 expand_dims flip floor log log10 log1p log2 power round sign sin "
        "sqrt square squeeze tanh transpose ravel stack hstack vstack column_stack concatenate append tile "
        "repeat where",
    EDA: "mean median std var percentile quantile histogram bincount unique corrcoef count_nonzero "
         "amax amin max min average nanmean nansum sum argmax argmin",
    DCF: "isnan nan_to_num delete",
}
NUMPY_BOTH = {"reshape": [DCF, FT]}
RANDOM = {"permutation": [SPLIT], "choice": [SPLIT], "shuffle": [SPLIT]}
NDARRAY = {
    FT: "astype reshape ravel flatten transpose squeeze clip round",
    EDA: "mean std var min max sum argmax argmin",
}

FRAME = {
    EDA: "head tail describe info value_counts nunique unique corr cov count mean median std var min max sum "
         "quantile skew kurt mode idxmax idxmin memory_usage nlargest nsmallest groupby aggregate "
         "equals duplicated pivot_table size first last get_group",
    DCF: "dropna fillna isnull isna notna notnull drop drop_duplicates replace interpolate ffill bfill where "
         "mask query clip rename reset_index set_index sort_values sort_index reindex merge join "
         "convert_dtypes infer_objects between isin",
    FT: "astype map apply applymap transform assign melt pivot explode abs cumsum diff pct_change rank "
        "shift round add_prefix add_suffix insert pop to_frame",
    SPLIT: "sample",
    FS: "select_dtypes",
}
FRAME_BOTH = {m: [VIS, EDA] for m in ("hist_frame", "hist_series", "boxplot_frame")}

# seaborn's distribution and categorical plots summarise the raw data
SNS_EXPLORE = ("countplot histplot distplot kdeplot boxplot violinplot barplot stripplot swarmplot "
               "pairplot jointplot displot catplot").split()

GROUPBY = "pandas.core.groupby.generic."
PANDAS_CLASSES = ["pandas.core.frame.DataFrame", "pandas.core.series.Series",
                  GROUPBY + "DataFrameGroupBy", GROUPBY + "SeriesGroupBy"]

SK_TRANSFORMERS = ("StandardScaler", "MinMaxScaler", "RobustScaler", "OneHotEncoder", "LabelEncoder",
                   "PolynomialFeatures")
SK_SELECTORS = ("SelectKBest", "RFE", "PCA")
SK_SEARCH = ("GridSearchCV", "RandomizedSearchCV")
SK_SPLITTERS = ("KFold", "StratifiedKFold")
SK_IMPUTERS = ("SimpleImputer",)
SK_VALIDATE = {"predict", "predict_proba", "score", "decision_function"}


def estimator_rules(fqn: str, methods: list[str]) -> dict:
    short = fqn.rsplit(".", 1)[1]
    if short in SK_SPLITTERS:
        base = [SPLIT]
    elif short in SK_TRANSFORMERS:
        base = [FT]
    elif short in SK_SELECTORS:
        base = [FS]
    elif short in SK_SEARCH:
        base = [TUNE]
    elif short in SK_IMPUTERS:
        base = [DCF]
    else:
        base = [MT]
    rules = {fqn: base}
    for m in methods:
        if m in ("get_params", "set_params"):
            rules[f"{fqn}.{m}"] = [TUNE]
        elif m in SK_VALIDATE and base in ([MT], [TUNE]):
            rules[f"{fqn}.{m}"] = [VAL]
        elif m == "split":
            rules[f"{fqn}.{m}"] = [SPLIT]
        elif m in ("fit", "fit_transform", "transform", "inverse_transform", "fit_predict", "get_support",
                   "get_feature_names_out", "predict", "predict_proba", "score", "decision_function"):
            rules[f"{fqn}.{m}"] = base
    return rules


def build() -> dict:
    db = load_stub_db(default_stub_dir())
    rules = dict(PREFIX)
    rules.update(EXACT)
    for cat, names in NUMPY.items():
        for n in names.split():
            if f"numpy.{n}" in db.functions:
                rules[f"numpy.{n}"] = [cat]
    for n, cats in NUMPY_BOTH.items():
        rules[f"numpy.{n}"] = cats
    for n, cats in RANDOM.items():
        rules[f"numpy.random.mtrand.RandomState.{n}"] = cats
    for cat, names in NDARRAY.items():
        for n in names.split():
            rules.setdefault(f"numpy.ndarray.{n}", [cat])
    for cls in PANDAS_CLASSES:
        methods = db.classes[cls].methods
        for cat, names in FRAME.items():
            for n in names.split():
                if n in methods:
                    rules.setdefault(f"{cls}.{n}", [cat])
        for n, cats in FRAME_BOTH.items():
            if n in methods:
                rules[f"{cls}.{n}"] = cats
    for n in SNS_EXPLORE:
        target = db.resolve(f"seaborn.{n}")
        if target is not None:
            rules[target] = [VIS, EDA]
    for fqn, cls in db.classes.items():
        if fqn.startswith("sklearn.") and fqn != "sklearn.utils._bunch.Bunch":
            rules.update(estimator_rules(fqn, sorted(cls.methods)))
    seq = "keras.src.models.sequential.Sequential"
    rules.update({seq: [MT], f"{seq}.add": [MT], f"{seq}.compile": [MT], f"{seq}.fit": [MT],
                  f"{seq}.summary": [MT], f"{seq}.predict": [VAL], f"{seq}.evaluate": [VAL]})
    return {
        "categories": CATEGORIES,
        "rules": {k: rules[k] for k in sorted(rules)},
        "table2_mapping": {"Feature Engineering": FT, "Data Preparation": DCF},
    }


if __name__ == "__main__":
    # category order is meaningful (index and headers follow it); rules are pre-sorted
    OUT.write_text(json.dumps(build(), indent=1) + "\n", encoding="utf-8")
    print(f"wrote {OUT}")
