"""Regenerate the shipped stub files from a hand-written type table.

Return types below are authored by hand.  The only thing taken from the
installed libraries is *where* each public name is defined, which becomes the
export table.  Run from the repository root::

    python3 tools/build_stubs.py

The generated ``*.stub.json`` files are committed; the analyzer never imports
the libraries.
"""

from __future__ import annotations

import argparse
import importlib
import json
import os
import sys
from pathlib import Path

os.environ.setdefault("MPLBACKEND", "Agg")
os.environ.setdefault("KERAS_BACKEND", "numpy")
os.environ.setdefault("TF_CPP_MIN_LOG_LEVEL", "3")

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
from headergen.tracer import runtime_fqn  # noqa: E402

ANY = "typing.Any"
NONE = "builtins.NoneType"
STR = "builtins.str"
INT = "builtins.int"
FLOAT = "builtins.float"
BOOL = "builtins.bool"
LIST = "builtins.list"
DICT = "builtins.dict"
TUPLE = "builtins.tuple"
DF = "pandas.core.frame.DataFrame"
S = "pandas.core.series.Series"
IDX = "pandas.core.indexes.base.Index"
ND = "numpy.ndarray"
F64 = "numpy.float64"
DFGB = "pandas.core.groupby.generic.DataFrameGroupBy"
SGB = "pandas.core.groupby.generic.SeriesGroupBy"
ILOC = "pandas.core.indexing._iLocIndexer"
LOC = "pandas.core.indexing._LocIndexer"
PLOT = "pandas.plotting._core.PlotAccessor"
STRACC = "pandas.core.strings.accessor.StringMethods"
AXES = "matplotlib.axes._axes.Axes"
FIG = "matplotlib.figure.Figure"
AXES_ARRAY = f"{ND}[{AXES}]"  # object array returned by subplots(nrows, ncols)
HIST = "keras.src.callbacks.history.History"
KT = "keras.src.backend.common.keras_tensor.KerasTensor"


def _same(names: str, ret) -> dict:
    return {n: [ret] if isinstance(ret, str) else list(ret) for n in names.split()}


# -- builtins --------------------------------------------------------------

BUILTIN_FUNCS = {
    **_same("print input exec", NONE),
    **_same("len abs hash id ord round", INT),
    **_same("repr chr hex bin oct format ascii", STR),
    **_same("isinstance issubclass hasattr callable all any", BOOL),
    **_same("sum min max pow divmod getattr vars globals locals dir eval", ANY),
    "sorted": [LIST], "next": [ANY], "iter": [ANY], "setattr": [NONE], "delattr": [NONE],
    "open": ["_io.TextIOWrapper"],
}

STR_METHODS = {
    **_same("lower upper strip lstrip rstrip replace title capitalize format join zfill center "
            "ljust rjust casefold swapcase expandtabs removeprefix removesuffix", STR),
    **_same("split rsplit splitlines", LIST),
    **_same("startswith endswith isdigit isalpha isalnum isspace isupper islower isnumeric", BOOL),
    **_same("find rfind index rindex count", INT),
    "encode": ["builtins.bytes"], "partition": [TUPLE], "rpartition": [TUPLE],
}
LIST_METHODS = {**_same("append insert extend remove clear sort reverse", NONE),
                **_same("index count", INT), "pop": [ANY], "copy": [LIST]}
DICT_METHODS = {"keys": ["builtins.dict_keys"], "values": ["builtins.dict_values"],
                "items": ["builtins.dict_items"], "get": [ANY], "pop": [ANY], "popitem": [TUPLE],
                "setdefault": [ANY], "update": [NONE], "clear": [NONE], "copy": [DICT]}
SET_METHODS = {**_same("add remove discard clear update", NONE),
               **_same("union intersection difference symmetric_difference copy", "builtins.set"),
               **_same("issubset issuperset isdisjoint", BOOL), "pop": [ANY]}
TUPLE_METHODS = _same("index count", INT)
INT_METHODS = {"bit_length": [INT], "to_bytes": ["builtins.bytes"]}
FLOAT_METHODS = {"is_integer": [BOOL], "hex": [STR]}
FILE_METHODS = {"read": [STR], "readline": [STR], "readlines": [LIST], "write": [INT],
                "close": [NONE], "__enter__": ["$self"], "__iter__": [STR]}


# -- numpy -----------------------------------------------------------------

NP_FUNCS = {
    **_same("numpy.array numpy.asarray numpy.zeros numpy.ones numpy.empty numpy.arange numpy.linspace "
            "numpy.reshape numpy.concatenate numpy.stack numpy.vstack numpy.hstack numpy.column_stack "
            "numpy.where numpy.unique numpy.sqrt numpy.exp numpy.log numpy.log1p numpy.log2 numpy.log10 "
            "numpy.abs numpy.cos numpy.sin numpy.tanh numpy.round numpy.clip numpy.dot numpy.matmul "
            "numpy.transpose numpy.expand_dims numpy.squeeze numpy.isnan numpy.nan_to_num numpy.cumsum "
            "numpy.diff numpy.sort numpy.argsort numpy.ravel numpy.ones_like numpy.zeros_like numpy.full "
            "numpy.eye numpy.corrcoef numpy.square numpy.power numpy.maximum numpy.minimum numpy.floor "
            "numpy.ceil numpy.exp2 numpy.sign numpy.triu numpy.tril numpy.meshgrid numpy.bincount "
            "numpy.percentile numpy.quantile numpy.random.rand numpy.random.randn numpy.random.randint "
            "numpy.random.choice numpy.random.normal numpy.random.uniform numpy.random.permutation "
            "numpy.flip numpy.tile numpy.repeat numpy.append numpy.delete numpy.isin numpy.argwhere "
            "numpy.logical_and numpy.logical_or numpy.logical_not numpy.histogram", ND),
    **_same("numpy.mean numpy.sum numpy.std numpy.var numpy.max numpy.min numpy.median numpy.prod "
            "numpy.nanmean numpy.nansum numpy.average numpy.amax numpy.amin", [F64, ND]),
    **_same("numpy.argmax numpy.argmin numpy.count_nonzero", ["numpy.int64", ND]),
    **_same("numpy.any numpy.all numpy.allclose numpy.array_equal", ["numpy.bool"]),
    **_same("numpy.random.seed numpy.random.shuffle", NONE),
}
ND_METHODS = {
    **_same("astype reshape flatten ravel copy transpose squeeze clip round argsort cumsum "
            "dot repeat take nonzero", ND),
    **_same("mean sum std var max min prod", [F64, ND]),
    **_same("argmax argmin", ["numpy.int64", ND]),
    "tolist": [LIST], "item": [ANY], "fill": [NONE], "sort": [NONE], "any": ["numpy.bool"],
    "all": ["numpy.bool"], "__getitem__": [ND], "__getitem__[int]": [ND, F64], "__iter__": [ND],
}
ND_ATTRS = {"shape": f"{TUPLE}[{INT},{INT}]", "T": ND, "size": INT, "ndim": INT, "dtype": "numpy.dtype"}
SCALAR_METHODS = {"round": [F64], "item": [ANY], "astype": [ANY], "tolist": [ANY]}


# -- pandas ----------------------------------------------------------------

_FRAME_SAME = ("head tail copy fillna dropna drop drop_duplicates rename sort_values sort_index sample "
               "astype replace applymap merge join describe corr cov isnull isna notnull notna abs "
               "round clip where mask assign query select_dtypes set_index pivot pivot_table melt "
               "transpose bfill ffill interpolate cumsum diff shift pct_change rank nlargest nsmallest "
               "reindex explode convert_dtypes infer_objects add_prefix add_suffix dropna")
DF_METHODS = {
    **_same(_FRAME_SAME, DF),
    **_same("sum mean median std var min max count nunique idxmax idxmin skew kurt mode", S),
    "reset_index": [DF], "apply": [DF, S], "map": [DF], "agg": [DF, S], "aggregate": [DF, S],
    "transform": [DF], "value_counts": [S], "groupby": [DFGB], "info": [NONE], "to_csv": [ANY],
    "to_numpy": [ND], "any": [S], "all": [S], "iterrows": ["builtins.generator"],
    "itertuples": [ANY], "items": ["builtins.generator"], "to_dict": [DICT], "to_excel": [NONE],
    "memory_usage": [S], "hist": [ND], "boxplot": [AXES], "duplicated": [S], "insert": [NONE],
    "pop": [S], "get": [DF, S], "set_axis": [DF], "quantile": [S, DF], "equals": [BOOL],
    "__getitem__[str]": [S], "__getitem__[list]": [DF], "__getitem__[mask]": [DF],
    "__getitem__[slice]": [DF], "__getitem__": [DF, S], "__getattr__": [S], "__iter__": [STR],
}
DF_ATTRS = {"values": ND, "shape": f"{TUPLE}[{INT},{INT}]", "columns": IDX, "index": IDX,
            "dtypes": S, "iloc": f"{ILOC}[{DF}]", "loc": f"{LOC}[{DF}]", "T": DF, "size": INT,
            "empty": BOOL, "ndim": INT, "plot": PLOT, "axes": LIST}
_SERIES_SAME = ("map apply fillna dropna astype head tail copy isnull isna notnull notna sort_values "
                "sort_index replace round abs clip between isin where mask cumsum diff shift "
                "value_counts drop sample rank pct_change interpolate bfill ffill rename reindex "
                "duplicated drop_duplicates explode nlargest nsmallest transform")
SERIES_METHODS = {
    **_same(_SERIES_SAME, S),
    **_same("sum mean median std var min max quantile skew kurt corr cov", F64),
    "reset_index": [DF, S], "unique": [ND], "nunique": [INT], "count": [INT], "describe": [S],
    "to_frame": [DF], "idxmax": [ANY], "idxmin": [ANY], "tolist": [LIST], "to_list": [LIST],
    "to_numpy": [ND], "groupby": [SGB], "agg": [S, F64], "aggregate": [S, F64], "mode": [S],
    "hist": [AXES], "any": [BOOL], "all": [BOOL], "item": [ANY], "to_dict": [DICT],
    "to_csv": [ANY], "info": [NONE], "get": [ANY], "items": ["builtins.zip"],
    "__getitem__[slice]": [S], "__getitem__[mask]": [S], "__getitem__[list]": [S],
    "__getitem__": [ANY], "__iter__": [ANY],
}
SERIES_ATTRS = {"values": ND, "shape": f"{TUPLE}[{INT}]", "index": IDX, "str": STRACC,
                "iloc": f"{ILOC}[{S}]", "loc": f"{LOC}[{S}]", "T": S, "size": INT, "dtype": "numpy.dtype",
                "name": ANY, "empty": BOOL, "plot": PLOT, "ndim": INT}
INDEX_METHODS = {"tolist": [LIST], "to_list": [LIST], "drop": [IDX], "unique": [IDX], "isin": [ND],
                 "to_numpy": [ND], "difference": [IDX], "union": [IDX], "intersection": [IDX],
                 "astype": [IDX], "map": [IDX], "sort_values": [IDX], "value_counts": [S],
                 "__getitem__[int]": [ANY], "__getitem__": [IDX], "__iter__": [ANY]}
INDEX_ATTRS = {"values": ND, "shape": f"{TUPLE}[{INT}]", "size": INT, "str": STRACC}
DFGB_METHODS = {
    **_same("agg aggregate transform head tail describe get_group first last sum mean median std "
            "var min max count nunique", DF),
    "apply": [DF, S], "size": [S], "__getitem__[str]": [SGB], "__getitem__[list]": [DFGB],
    "__getitem__": [DFGB, SGB], "__getattr__": [SGB],
}
SGB_METHODS = {
    **_same("transform sum mean median std var min max count nunique size first last unique "
            "value_counts head tail cumsum shift", S),
    "agg": [DF, S], "aggregate": [DF, S], "apply": [DF, S], "describe": [DF],
}
STRACC_METHODS = _same("lower upper strip lstrip rstrip replace contains startswith endswith len split "
                       "extract get slice title cat match isdigit isnumeric zfill pad count findall "
                       "capitalize", S)
PLOT_METHODS = {**_same("bar barh hist line scatter box pie kde area density hexbin", AXES),
                "__call__": [AXES]}
ILOC_DF = {"__getitem__[int]": [S], "__getitem__[list]": [DF], "__getitem__[slice]": [DF],
           "__getitem__[mask]": [DF], "__getitem__[tuple:slice,int]": [S],
           "__getitem__[tuple:slice,slice]": [DF], "__getitem__[tuple:slice,list]": [DF],
           "__getitem__[tuple:int,slice]": [S], "__getitem__[tuple:list,int]": [S],
           "__getitem__[tuple:list,slice]": [DF], "__getitem__[tuple:mask,int]": [S],
           "__getitem__[tuple:int,int]": [ANY], "__getitem__[tuple]": [DF, S], "__getitem__": [DF, S]}
ILOC_S = {"__getitem__[slice]": [S], "__getitem__[list]": [S], "__getitem__[mask]": [S],
          "__getitem__[int]": [ANY], "__getitem__": [S]}
LOC_DF = {"__getitem__[str]": [S], "__getitem__[int]": [S], "__getitem__[list]": [DF],
          "__getitem__[mask]": [DF], "__getitem__[slice]": [DF], "__getitem__[tuple:mask,str]": [S],
          "__getitem__[tuple:slice,str]": [S], "__getitem__[tuple:mask,list]": [DF],
          "__getitem__[tuple:slice,list]": [DF], "__getitem__[tuple:slice,slice]": [DF],
          "__getitem__[tuple:list,list]": [DF], "__getitem__[tuple:list,str]": [S],
          "__getitem__[tuple:int,str]": [ANY], "__getitem__[tuple:str,str]": [ANY],
          "__getitem__[tuple]": [DF, S], "__getitem__": [DF, S]}
LOC_S = {"__getitem__[mask]": [S], "__getitem__[list]": [S], "__getitem__[slice]": [S],
         "__getitem__[str]": [ANY], "__getitem__[int]": [ANY], "__getitem__": [S]}

PD_FUNCS = {
    **_same("pandas.read_csv pandas.read_excel pandas.read_json pandas.read_table pandas.read_parquet "
            "pandas.merge pandas.get_dummies pandas.crosstab pandas.pivot_table pandas.melt", DF),
    "pandas.concat": [DF, S], "pandas.to_datetime": [S], "pandas.to_numeric": [S], "pandas.cut": [S],
    "pandas.qcut": [S], "pandas.isnull": [DF, S, BOOL], "pandas.isna": [DF, S, BOOL],
    "pandas.notnull": [DF, S, BOOL], "pandas.unique": [ND], "pandas.set_option": [NONE],
}


# -- sklearn ---------------------------------------------------------------

_EST = {"fit": ["$self"], "get_params": [DICT], "set_params": ["$self"]}
_PRED = {"predict": [ND], "score": [F64]}
_PROBA = {"predict_proba": [ND]}
_TRANS = {"transform": [ND], "fit_transform": [ND]}
_INV = {"inverse_transform": [ND]}
_EST_ATTRS = {"coef_": ND, "intercept_": ND, "classes_": ND, "feature_importances_": ND,
              "n_features_in_": INT}

SK_CLASSES = {
    "sklearn.linear_model.LogisticRegression": ({**_EST, **_PRED, **_PROBA, "decision_function": [ND]}, _EST_ATTRS),
    "sklearn.linear_model.LogisticRegressionCV": ({**_EST, **_PRED, **_PROBA, "decision_function": [ND]}, _EST_ATTRS),
    "sklearn.linear_model.LinearRegression": ({**_EST, **_PRED}, _EST_ATTRS),
    "sklearn.linear_model.Ridge": ({**_EST, **_PRED}, _EST_ATTRS),
    "sklearn.linear_model.Lasso": ({**_EST, **_PRED}, _EST_ATTRS),
    "sklearn.linear_model.SGDClassifier": ({**_EST, **_PRED}, _EST_ATTRS),
    "sklearn.ensemble.RandomForestClassifier": ({**_EST, **_PRED, **_PROBA}, _EST_ATTRS),
    "sklearn.ensemble.RandomForestRegressor": ({**_EST, **_PRED}, _EST_ATTRS),
    "sklearn.ensemble.GradientBoostingClassifier": ({**_EST, **_PRED, **_PROBA}, _EST_ATTRS),
    "sklearn.ensemble.GradientBoostingRegressor": ({**_EST, **_PRED}, _EST_ATTRS),
    "sklearn.ensemble.AdaBoostClassifier": ({**_EST, **_PRED, **_PROBA}, _EST_ATTRS),
    "sklearn.ensemble.ExtraTreesClassifier": ({**_EST, **_PRED, **_PROBA}, _EST_ATTRS),
    "sklearn.tree.DecisionTreeClassifier": ({**_EST, **_PRED, **_PROBA}, _EST_ATTRS),
    "sklearn.tree.DecisionTreeRegressor": ({**_EST, **_PRED}, _EST_ATTRS),
    "sklearn.svm.SVC": ({**_EST, **_PRED, "decision_function": [ND]}, _EST_ATTRS),
    "sklearn.svm.SVR": ({**_EST, **_PRED}, _EST_ATTRS),
    "sklearn.neighbors.KNeighborsClassifier": ({**_EST, **_PRED, **_PROBA}, _EST_ATTRS),
    "sklearn.neighbors.KNeighborsRegressor": ({**_EST, **_PRED}, _EST_ATTRS),
    "sklearn.naive_bayes.GaussianNB": ({**_EST, **_PRED, **_PROBA}, _EST_ATTRS),
    "sklearn.cluster.KMeans": ({**_EST, **_PRED, "fit_predict": [ND], **_TRANS},
                               {"cluster_centers_": ND, "labels_": ND, "inertia_": FLOAT}),
    "sklearn.decomposition.PCA": ({**_EST, **_TRANS, **_INV},
                                  {"explained_variance_ratio_": ND, "components_": ND}),
    "sklearn.preprocessing.StandardScaler": ({**_EST, **_TRANS, **_INV}, {"mean_": ND, "scale_": ND}),
    "sklearn.preprocessing.MinMaxScaler": ({**_EST, **_TRANS, **_INV}, {}),
    "sklearn.preprocessing.RobustScaler": ({**_EST, **_TRANS, **_INV}, {}),
    "sklearn.preprocessing.LabelEncoder": ({**_EST, **_TRANS, **_INV}, {"classes_": ND}),
    "sklearn.preprocessing.OneHotEncoder": ({**_EST, **_TRANS, **_INV, "get_feature_names_out": [ND]}, {}),
    "sklearn.preprocessing.PolynomialFeatures": ({**_EST, **_TRANS}, {}),
    "sklearn.impute.SimpleImputer": ({**_EST, **_TRANS}, {}),
    "sklearn.feature_selection.SelectKBest": ({**_EST, **_TRANS, "get_support": [ND]}, {"scores_": ND}),
    "sklearn.feature_selection.RFE": ({**_EST, **_TRANS, "get_support": [ND]}, {"support_": ND, "ranking_": ND}),
    "sklearn.model_selection.GridSearchCV": ({**_EST, **_PRED, **_PROBA},
                                             {"best_params_": DICT, "best_score_": F64,
                                              "best_estimator_": ANY, "cv_results_": DICT}),
    "sklearn.model_selection.RandomizedSearchCV": ({**_EST, **_PRED},
                                                   {"best_params_": DICT, "best_score_": F64,
                                                    "best_estimator_": ANY}),
    "sklearn.model_selection.KFold": ({"split": ["builtins.generator"], "get_n_splits": [INT]}, {}),
    "sklearn.model_selection.StratifiedKFold": ({"split": ["builtins.generator"], "get_n_splits": [INT]}, {}),
    "sklearn.pipeline.Pipeline": ({**_EST, **_PRED, **_TRANS}, {"named_steps": ANY}),
    "sklearn.utils._bunch.Bunch": ({}, {"data": ND, "target": ND, "feature_names": LIST,
                                        "target_names": ND, "DESCR": STR, "frame": DF}),
}
SK_FUNCS = {
    "sklearn.model_selection.train_test_split": [f"{LIST}[$0,$0,$1,$1]"],
    "sklearn.model_selection.cross_val_score": [ND],
    "sklearn.model_selection.cross_val_predict": [ND],
    "sklearn.model_selection.cross_validate": [DICT],
    "sklearn.pipeline.make_pipeline": ["sklearn.pipeline.Pipeline"],
    "sklearn.preprocessing.normalize": [ND],
    "sklearn.preprocessing.scale": [ND],
    **_same("sklearn.metrics.accuracy_score sklearn.metrics.f1_score sklearn.metrics.precision_score "
            "sklearn.metrics.recall_score sklearn.metrics.roc_auc_score sklearn.metrics.mean_squared_error "
            "sklearn.metrics.mean_absolute_error sklearn.metrics.r2_score sklearn.metrics.log_loss", F64),
    "sklearn.metrics.confusion_matrix": [ND],
    "sklearn.metrics.classification_report": [STR],
    "sklearn.metrics.roc_curve": [f"{TUPLE}[{ND},{ND},{ND}]"],
    "sklearn.datasets.load_iris": ["sklearn.utils._bunch.Bunch"],
    "sklearn.datasets.load_breast_cancer": ["sklearn.utils._bunch.Bunch"],
    "sklearn.datasets.load_wine": ["sklearn.utils._bunch.Bunch"],
    "sklearn.datasets.load_digits": ["sklearn.utils._bunch.Bunch"],
    "sklearn.datasets.make_classification": [f"{TUPLE}[{ND},{ND}]"],
    "sklearn.datasets.make_regression": [f"{TUPLE}[{ND},{ND}]"],
    "sklearn.datasets.make_blobs": [f"{TUPLE}[{ND},{ND}]"],
}


# -- matplotlib / seaborn --------------------------------------------------

PLT_FUNCS = {
    **_same("matplotlib.pyplot.show matplotlib.pyplot.tight_layout matplotlib.pyplot.close "
            "matplotlib.pyplot.savefig matplotlib.pyplot.grid", NONE),
    **_same("matplotlib.pyplot.plot matplotlib.pyplot.xticks matplotlib.pyplot.yticks", LIST),
    **_same("matplotlib.pyplot.title matplotlib.pyplot.xlabel matplotlib.pyplot.ylabel "
            "matplotlib.pyplot.suptitle matplotlib.pyplot.text", "matplotlib.text.Text"),
    "matplotlib.pyplot.figure": [FIG],
    "matplotlib.pyplot.subplots": [f"{TUPLE}[{FIG},{AXES}]", f"{TUPLE}[{FIG},{AXES_ARRAY}]"],
    "matplotlib.pyplot.subplot": [AXES], "matplotlib.pyplot.gca": [AXES], "matplotlib.pyplot.gcf": [FIG],
    "matplotlib.pyplot.legend": ["matplotlib.legend.Legend"],
    "matplotlib.pyplot.scatter": ["matplotlib.collections.PathCollection"],
    "matplotlib.pyplot.bar": ["matplotlib.container.BarContainer"],
    "matplotlib.pyplot.barh": ["matplotlib.container.BarContainer"],
    "matplotlib.pyplot.hist": [TUPLE], "matplotlib.pyplot.pie": [TUPLE],
    "matplotlib.pyplot.boxplot": [DICT], "matplotlib.pyplot.imshow": ["matplotlib.image.AxesImage"],
    "matplotlib.pyplot.axis": [TUPLE], "matplotlib.pyplot.xlim": [TUPLE], "matplotlib.pyplot.ylim": [TUPLE],
    "matplotlib.pyplot.colorbar": ["matplotlib.colorbar.Colorbar"],
    "matplotlib.pyplot.axhline": ["matplotlib.lines.Line2D"],
    "matplotlib.pyplot.axvline": ["matplotlib.lines.Line2D"],
    "matplotlib.pyplot.fill_between": [ANY], "matplotlib.pyplot.style.use": [NONE],
}
AXES_METHODS = {
    **_same("set_title set_xlabel set_ylabel text annotate", "matplotlib.text.Text"),
    **_same("plot", LIST), "scatter": ["matplotlib.collections.PathCollection"],
    **_same("bar barh", "matplotlib.container.BarContainer"), "hist": [TUPLE], "pie": [TUPLE],
    "legend": ["matplotlib.legend.Legend"], "imshow": ["matplotlib.image.AxesImage"],
    **_same("set_xticks set_yticks set_xticklabels set_yticklabels", LIST),
    **_same("grid set_xlim set_ylim axis set_aspect invert_yaxis", ANY),
    "twinx": [AXES], "boxplot": [DICT], "axhline": ["matplotlib.lines.Line2D"],
    "axvline": ["matplotlib.lines.Line2D"],
}
AXES_ARRAY_METHODS = {**_same("ravel flatten reshape copy", AXES_ARRAY),
                      **_same("__iter__ __getitem__[int]", AXES), "__getitem__": [AXES_ARRAY, AXES]}
FIG_METHODS = {"add_subplot": [AXES], "savefig": [NONE], "suptitle": ["matplotlib.text.Text"],
               "tight_layout": [NONE], "colorbar": ["matplotlib.colorbar.Colorbar"],
               "set_size_inches": [NONE], "subplots_adjust": [NONE], "add_axes": [AXES],
               "subplots": [ANY]}
SNS_FUNCS = {
    "seaborn.load_dataset": [DF],
    **_same("seaborn.heatmap seaborn.countplot seaborn.barplot seaborn.boxplot seaborn.histplot "
            "seaborn.distplot seaborn.scatterplot seaborn.lineplot seaborn.violinplot seaborn.kdeplot "
            "seaborn.regplot seaborn.stripplot seaborn.swarmplot seaborn.pointplot", AXES),
    "seaborn.pairplot": ["seaborn.axisgrid.PairGrid"], "seaborn.jointplot": ["seaborn.axisgrid.JointGrid"],
    **_same("seaborn.catplot seaborn.lmplot seaborn.displot seaborn.relplot", "seaborn.axisgrid.FacetGrid"),
    **_same("seaborn.set seaborn.set_style seaborn.set_theme seaborn.set_palette seaborn.set_context", NONE),
    "seaborn.color_palette": [LIST],
}
GRID_METHODS = {"map": ["$self"], "add_legend": ["$self"], "set": ["$self"], "savefig": [NONE]}


# -- keras -----------------------------------------------------------------

_LAYER = {"__call__": [KT], "get_weights": [LIST], "set_weights": [NONE], "count_params": [INT]}
KERAS_LAYERS = ("Dense Dropout Conv2D MaxPooling2D Flatten LSTM Embedding BatchNormalization "
                "Activation Conv1D MaxPooling1D GlobalAveragePooling2D")
_MODEL = {"add": [NONE], "compile": [NONE], "fit": [HIST], "predict": [ND],
          "evaluate": [LIST, FLOAT], "summary": [NONE], "save": [NONE], "pop": [ANY],
          "get_weights": [LIST], "count_params": [INT], "__call__": [KT]}
KERAS_CLASSES = {
    "keras.models.Sequential": (_MODEL, {"layers": LIST, "history": HIST}),
    **{f"keras.layers.{n}": (_LAYER, {}) for n in KERAS_LAYERS.split()},
    "keras.optimizers.Adam": ({}, {}), "keras.optimizers.SGD": ({}, {}),
    "keras.callbacks.EarlyStopping": ({}, {}),
    "keras.src.callbacks.history.History": ({}, {"history": DICT, "epoch": LIST}),
}
KERAS_FUNCS = {"keras.utils.to_categorical": [ND], "keras.layers.Input": [KT],
               "keras.models.load_model": [ANY]}


# -- generation ------------------------------------------------------------


def _import_path(path: str):
    parts = path.split(".")
    for i in range(len(parts), 0, -1):
        try:
            obj = importlib.import_module(".".join(parts[:i]))
        except ImportError:
            continue
        for attr in parts[i:]:
            obj = getattr(obj, attr)
        return obj
    raise ImportError(path)


def _type_fqn(cls: type) -> str:
    return f"{cls.__module__}.{cls.__qualname__}"


class Builder:
    def __init__(self, package: str):
        self.out = {"package": package, "exports": {}, "functions": {}, "classes": {}}

    def _class(self, fqn: str) -> dict:
        return self.out["classes"].setdefault(fqn, {"attributes": {}, "methods": {}})

    def export(self, public: str, target: str):
        if public != target:
            self.out["exports"][public] = target

    def function(self, public: str, returns: list[str]):
        obj = _import_path(public)
        fqn = runtime_fqn(obj)
        owner, _, name = fqn.rpartition(".")
        if getattr(obj, "__self__", None) is not None and not isinstance(obj.__self__, type(sys)):
            self._class(owner)["methods"][name] = {"returns": returns}
        else:
            self.out["functions"][fqn] = {"returns": returns}
        self.export(public, fqn)

    def klass(self, public: str, methods: dict, attrs: dict, sample=None):
        if "[" in public or public.startswith("builtins.") and not _has_builtin(public):
            fqn, cls = public, None
        else:
            cls = _import_path(public)
            fqn = _type_fqn(cls)
            self.export(public, fqn)
        entry = self._class(fqn)
        entry["attributes"].update(attrs)
        for name, returns in methods.items():
            real = name
            if cls is not None and not name.startswith("__getitem__["):
                member = getattr(cls, name, None)
                if member is None:
                    print(f"  skip {fqn}.{name}: not present", file=sys.stderr)
                    continue
                real = getattr(member, "__name__", name) or name
                if not isinstance(real, str) or real == "<lambda>":
                    real = name
            entry["methods"][real] = {"returns": returns}
            if real != name:
                self.export(f"{fqn}.{name}", f"{fqn}.{real}")

    def write(self, directory: Path):
        path = directory / f"{self.out['package']}.stub.json"
        data = {k: v for k, v in self.out.items() if v or k == "package"}
        path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n", encoding="utf-8")
        print(f"wrote {path}")


def _has_builtin(path: str) -> bool:
    import builtins
    return hasattr(builtins, path.split(".", 1)[1])


def build_builtins() -> Builder:
    import builtins
    b = Builder("builtins")
    for name, returns in BUILTIN_FUNCS.items():
        b.function(f"builtins.{name}", returns)
    tables = {"str": STR_METHODS, "list": LIST_METHODS, "dict": DICT_METHODS, "set": SET_METHODS,
              "tuple": TUPLE_METHODS, "int": INT_METHODS, "float": FLOAT_METHODS}
    for name in dir(builtins):
        obj = getattr(builtins, name)
        if isinstance(obj, type) and not name.startswith("_"):
            b.klass(f"builtins.{name}", tables.get(name, {}), {})
    for extra in ("dict_keys", "dict_values", "dict_items", "generator", "NoneType"):
        b._class(f"builtins.{extra}")
    b.klass("_io.TextIOWrapper", FILE_METHODS, {})
    return b


def build_numpy() -> Builder:
    b = Builder("numpy")
    for name, returns in NP_FUNCS.items():
        b.function(name, returns)
    b.klass("numpy.ndarray", ND_METHODS, ND_ATTRS)
    for scalar in ("numpy.float64", "numpy.int64", "numpy.bool"):
        b.klass(scalar, SCALAR_METHODS, {})
    b.klass("numpy.dtype", {}, {})
    return b


def build_pandas() -> Builder:
    b = Builder("pandas")
    for name, returns in PD_FUNCS.items():
        b.function(name, returns)
    b.klass("pandas.DataFrame", DF_METHODS, DF_ATTRS)
    b.klass("pandas.Series", SERIES_METHODS, SERIES_ATTRS)
    b.klass("pandas.Index", INDEX_METHODS, INDEX_ATTRS)
    b.klass("pandas.core.groupby.generic.DataFrameGroupBy", DFGB_METHODS, {})
    b.klass("pandas.core.groupby.generic.SeriesGroupBy", SGB_METHODS, {})
    b.klass(STRACC, STRACC_METHODS, {})
    b.klass(PLOT, PLOT_METHODS, {})
    b.klass(f"{ILOC}[{DF}]", ILOC_DF, {})
    b.klass(f"{ILOC}[{S}]", ILOC_S, {})
    b.klass(f"{LOC}[{DF}]", LOC_DF, {})
    b.klass(f"{LOC}[{S}]", LOC_S, {})
    return b


def build_sklearn() -> Builder:
    b = Builder("sklearn")
    for name, returns in SK_FUNCS.items():
        b.function(name, returns)
    for name, (methods, attrs) in SK_CLASSES.items():
        b.klass(name, methods, attrs)
    return b


def build_matplotlib() -> Builder:
    b = Builder("matplotlib")
    for name, returns in PLT_FUNCS.items():
        b.function(name, returns)
    b.klass(AXES, AXES_METHODS, {})
    b.klass(FIG, FIG_METHODS, {})
    b.klass(AXES_ARRAY, AXES_ARRAY_METHODS, {})
    return b


def build_seaborn() -> Builder:
    b = Builder("seaborn")
    for name, returns in SNS_FUNCS.items():
        b.function(name, returns)
    for grid in ("seaborn.axisgrid.FacetGrid", "seaborn.axisgrid.PairGrid", "seaborn.axisgrid.JointGrid"):
        b.klass(grid, GRID_METHODS, {})
    return b


def build_keras() -> Builder:
    b = Builder("keras")
    for name, returns in KERAS_FUNCS.items():
        b.function(name, returns)
    for name, (methods, attrs) in KERAS_CLASSES.items():
        b.klass(name, methods, attrs)
    return b


BUILDERS = {"builtins": build_builtins, "numpy": build_numpy, "pandas": build_pandas,
            "sklearn": build_sklearn, "matplotlib": build_matplotlib, "seaborn": build_seaborn,
            "keras": build_keras}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path,
                        default=Path(__file__).resolve().parents[1] / "src/headergen/data/stubs")
    parser.add_argument("packages", nargs="*", default=list(BUILDERS))
    args = parser.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.packages:
        BUILDERS[name]().write(args.out)


if __name__ == "__main__":
    main()
