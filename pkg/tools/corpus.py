"""Mini real-world corpus: five ML pipelines over small synthetic CSVs.

Each cell is paired with the high-level operation categories a reader would
assign to it (the header truth), written by hand from what the cell does:
G = Generic Operations, D = Data Preparation and Exploration,
F = Feature Engineering, M = Model Building and Training.
Call-site truth is produced by the tracing oracle, as for every fixture.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from make_fixtures import FIXTURES, dump, write_case

TOPS = {"G": "Generic Operations", "D": "Data Preparation and Exploration",
        "F": "Feature Engineering", "M": "Model Building and Training"}


def _write_csv(path: Path, header: list[str], rows: list[list]):
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def titanic_data(path: Path):
    rng = np.random.default_rng(7)
    rows = []
    for pid in range(1, 201):
        pclass = int(rng.choice([1, 2, 3], p=[0.25, 0.25, 0.5]))
        sex = str(rng.choice(["male", "female"]))
        age = "" if rng.random() < 0.15 else f"{rng.uniform(1, 70):.0f}"
        sibsp = int(rng.integers(0, 4))
        parch = int(rng.integers(0, 3))
        fare = f"{rng.gamma(2.0, 15.0 * (4 - pclass)):.2f}"
        embarked = "" if rng.random() < 0.02 else str(rng.choice(["S", "C", "Q"], p=[0.7, 0.2, 0.1]))
        p = 0.2 + 0.5 * (sex == "female") + 0.1 * (pclass == 1)
        survived = int(rng.random() < p)
        rows.append([pid, survived, pclass, f"Passenger {pid}", sex, age, sibsp, parch, fare, embarked])
    _write_csv(path, ["PassengerId", "Survived", "Pclass", "Name", "Sex", "Age", "SibSp", "Parch", "Fare",
                      "Embarked"], rows)


def housing_data(path: Path):
    rng = np.random.default_rng(11)
    rows = []
    for i in range(240):
        area = rng.uniform(40, 250)
        rooms = int(rng.integers(1, 7))
        age = int(rng.integers(0, 80))
        dist = rng.uniform(0.5, 30)
        hood = str(rng.choice(["north", "south", "east", "west"]))
        price = 1500 * area + 9000 * rooms - 400 * age - 2500 * dist + rng.normal(0, 20000) + 50000
        rows.append([i, f"{area:.1f}", rooms, age, f"{dist:.2f}", hood, f"{max(price, 20000):.0f}"])
    _write_csv(path, ["id", "area", "rooms", "age", "distance", "neighborhood", "price"], rows)


def churn_data(path: Path):
    rng = np.random.default_rng(3)
    rows = []
    for i in range(300):
        tenure = int(rng.integers(0, 72))
        monthly = rng.uniform(20, 120)
        contract = str(rng.choice(["month", "year", "two-year"], p=[0.55, 0.25, 0.2]))
        support = int(rng.integers(0, 6))
        total = "" if tenure == 0 else f"{monthly * tenure:.2f}"
        p = 0.5 - 0.005 * tenure + 0.002 * monthly + 0.2 * (contract == "month") - 0.03 * support
        churn = "yes" if rng.random() < min(max(p, 0.02), 0.95) else "no"
        rows.append([f"C{i:04d}", tenure, f"{monthly:.2f}", total, contract, support, churn])
    _write_csv(path, ["customer", "tenure", "monthly", "total", "contract", "support_calls", "churn"], rows)


def sensor_data(path: Path):
    rng = np.random.default_rng(5)
    rows = []
    for i in range(400):
        label = int(rng.integers(0, 3))
        feats = rng.normal(label, 1.0, size=6)
        rows.append([i] + [f"{v:.4f}" for v in feats] + [label])
    _write_csv(path, ["id"] + [f"s{k}" for k in range(6)] + ["label"], rows)


TITANIC = [
    ("G", """import numpy as np
import pandas as pd
import matplotlib.pyplot as plt
import seaborn as sns
from sklearn.model_selection import train_test_split
from sklearn.ensemble import RandomForestClassifier
from sklearn.linear_model import LogisticRegression
from sklearn.metrics import accuracy_score, confusion_matrix"""),
    ("D", """train = pd.read_csv("train.csv")
train.head()"""),
    ("D", """train.info()
train.describe()"""),
    ("D", """train.isnull().sum()"""),
    ("D", """train["Survived"].value_counts()"""),
    ("G D", """sns.countplot(x="Survived", hue="Sex", data=train)
plt.title("Survival by sex")
plt.show()"""),
    ("D", """train.groupby("Pclass")["Survived"].mean()"""),
    ("D", """train["Age"] = train["Age"].fillna(train["Age"].median())
train["Embarked"] = train["Embarked"].fillna("S")"""),
    ("F", """train["FamilySize"] = train["SibSp"] + train["Parch"] + 1
train["IsAlone"] = np.where(train["FamilySize"] == 1, 1, 0)"""),
    ("F", """train["Sex"] = train["Sex"].map({"male": 0, "female": 1})
embarked = pd.get_dummies(train["Embarked"], prefix="Emb")
train = pd.concat([train, embarked], axis=1)"""),
    ("D F", """train = train.drop(["Name", "Embarked", "PassengerId"], axis=1)
features = train[["Pclass", "Sex", "Age", "Fare", "FamilySize", "IsAlone"]]
target = train["Survived"]"""),
    ("D", """X_train, X_val, y_train, y_val = train_test_split(features, target, test_size=0.25, random_state=1)"""),
    ("M", """forest = RandomForestClassifier(n_estimators=50, random_state=1)
forest.fit(X_train, y_train)
pred = forest.predict(X_val)
print(accuracy_score(y_val, pred))"""),
    ("M", """logreg = LogisticRegression(max_iter=500)
logreg.fit(X_train, y_train)
print(logreg.score(X_val, y_val))"""),
    ("M G", """cm = confusion_matrix(y_val, pred)
sns.heatmap(cm, annot=True, fmt="d")
plt.show()"""),
]

HOUSING = [
    ("G", """import pandas as pd
import numpy as np
import matplotlib.pyplot as plt
import seaborn as sns
from sklearn.preprocessing import StandardScaler
from sklearn.linear_model import LinearRegression, Ridge
from sklearn.model_selection import train_test_split, cross_val_score
from sklearn.metrics import mean_squared_error, r2_score"""),
    ("D", """houses = pd.read_csv("houses.csv")
print(houses.shape)
houses.head()"""),
    ("D", """houses.describe()"""),
    ("D G", """corr = houses.drop(columns=["neighborhood"]).corr()
plt.figure(figsize=(6, 5))
sns.heatmap(corr, annot=True)
plt.show()"""),
    ("G D", """sns.histplot(houses["price"], bins=30)
plt.show()"""),
    ("F", """houses["log_price"] = np.log1p(houses["price"])
houses["area_per_room"] = houses.area / houses.rooms"""),
    ("F", """houses = pd.get_dummies(houses, columns=["neighborhood"], drop_first=True)"""),
    ("D F", """cols = [c for c in houses.columns if c not in ("id", "price", "log_price")]
X = houses[cols].values
y = houses["log_price"].values"""),
    ("D", """X_train, X_test, y_train, y_test = train_test_split(X, y, test_size=0.2, random_state=42)"""),
    ("F", """scaler = StandardScaler()
X_train = scaler.fit_transform(X_train)
X_test = scaler.transform(X_test)"""),
    ("G M", """def rmse(model, X, y):
    pred = model.predict(X)
    return np.sqrt(mean_squared_error(y, pred))"""),
    ("M", """lin = LinearRegression()
lin.fit(X_train, y_train)
print("linear", rmse(lin, X_test, y_test))"""),
    ("M", """for alpha in [0.1, 1.0, 10.0]:
    ridge = Ridge(alpha=alpha)
    scores = cross_val_score(ridge, X_train, y_train, cv=5)
    print(alpha, scores.mean())"""),
    ("M", """ridge = Ridge(alpha=1.0)
ridge.fit(X_train, y_train)
print("ridge", rmse(ridge, X_test, y_test), r2_score(y_test, ridge.predict(X_test)))"""),
    ("G M", """plt.scatter(y_test, ridge.predict(X_test))
plt.xlabel("actual")
plt.ylabel("predicted")
plt.show()"""),
]

DIGITS = [
    ("G", """import numpy as np
import matplotlib.pyplot as plt
from sklearn.datasets import load_digits
from sklearn.decomposition import PCA
from sklearn.cluster import KMeans
from sklearn.svm import SVC
from sklearn.model_selection import GridSearchCV, train_test_split
from sklearn.metrics import classification_report"""),
    ("D", """digits = load_digits()
X, y = digits.data, digits.target
print(X.shape)"""),
    ("G D", """fig, axes = plt.subplots(2, 5, figsize=(8, 4))
for ax, image, label in zip(axes.ravel(), digits.images, digits.target):
    ax.imshow(image, cmap="gray")
    ax.set_title(label)
plt.tight_layout()"""),
    ("D", """print(np.bincount(y))"""),
    ("F", """X = X / 16.0"""),
    ("F", """pca = PCA(n_components=2)
projected = pca.fit_transform(X)"""),
    ("G", """plt.scatter(projected[:, 0], projected[:, 1], c=y, s=5)
plt.colorbar()
plt.show()"""),
    ("M", """kmeans = KMeans(n_clusters=10, n_init=4, random_state=0)
clusters = kmeans.fit_predict(X)"""),
    ("D", """X_train, X_test, y_train, y_test = train_test_split(X, y, test_size=0.25, random_state=0)"""),
    ("M", """grid = GridSearchCV(SVC(), {"C": [1, 10], "gamma": [0.01, 0.1]}, cv=3)
grid.fit(X_train, y_train)
print(grid.best_params_)"""),
    ("M", """best = grid.best_estimator_
pred = grid.predict(X_test)
print(classification_report(y_test, pred))"""),
]

CHURN = [
    ("G", """import pandas as pd
import numpy as np
import matplotlib.pyplot as plt
from sklearn.preprocessing import LabelEncoder, MinMaxScaler
from sklearn.model_selection import train_test_split
from sklearn.ensemble import GradientBoostingClassifier
from sklearn.metrics import roc_auc_score, roc_curve"""),
    ("D", """df = pd.read_csv("churn.csv")
df.head(10)"""),
    ("D", """print(df.dtypes)
print(df["contract"].unique())"""),
    ("D", """df["total"] = pd.to_numeric(df["total"], errors="coerce")
df = df.dropna()
df = df.drop_duplicates()"""),
    ("D", """df.groupby("contract")["monthly"].agg(["mean", "max"])"""),
    ("G D", """df["tenure"].plot.hist(bins=20)
plt.show()"""),
    ("F", """df["avg_charge"] = df.total / df.tenure
df.monthly[df.monthly > 110] = 110"""),
    ("F", """encoder = LabelEncoder()
df["contract"] = encoder.fit_transform(df["contract"])
df["churn"] = df["churn"].map({"yes": 1, "no": 0})"""),
    ("F D", """features = df[["tenure", "monthly", "total", "contract", "support_calls", "avg_charge"]]
labels = df["churn"]
print(features[0:5])"""),
    ("F", """scaler = MinMaxScaler()
features = scaler.fit_transform(features)"""),
    ("D", """X_train, X_test, y_train, y_test = train_test_split(features, labels, test_size=0.3, random_state=2, stratify=labels)"""),
    ("G", """def summarize(model, X, y):
    proba = model.predict_proba(X)[:, 1]
    return roc_auc_score(y, proba)"""),
    ("M", """gbc = GradientBoostingClassifier(n_estimators=60, random_state=2)
gbc.fit(X_train, y_train)
print("auc", summarize(gbc, X_test, y_test))"""),
    ("M G", """fpr, tpr, _ = roc_curve(y_test, gbc.predict_proba(X_test)[:, 1])
plt.plot(fpr, tpr)
plt.plot([0, 1], [0, 1], linestyle="--")
plt.show()"""),
]

SENSORS = [
    ("G", """import numpy as np
import pandas as pd
import matplotlib.pyplot as plt
from sklearn.model_selection import train_test_split
from sklearn.preprocessing import StandardScaler
from keras.models import Sequential
from keras.layers import Dense, Dropout
from keras.utils import to_categorical"""),
    ("D", """data = pd.read_csv("sensors.csv")
data.describe()"""),
    ("D", """data["label"].value_counts().sort_index()"""),
    ("G D", """data.boxplot(column=["s0", "s1", "s2"])
plt.show()"""),
    ("D F", """X = data.drop(["id", "label"], axis=1).values
y = to_categorical(data["label"].values, num_classes=3)"""),
    ("D", """X_train, X_test, y_train, y_test = train_test_split(X, y, test_size=0.2, random_state=4)"""),
    ("F", """scaler = StandardScaler()
X_train = scaler.fit_transform(X_train)
X_test = scaler.transform(X_test)"""),
    ("G M", """def build_model(width):
    model = Sequential()
    model.add(Dense(width, activation="relu"))
    model.add(Dropout(0.2))
    model.add(Dense(3, activation="softmax"))
    model.compile(optimizer="adam", loss="categorical_crossentropy", metrics=["accuracy"])
    return model"""),
    ("M", """net = build_model(16)
history = net.fit(X_train, y_train, epochs=8, batch_size=32, verbose=0, validation_split=0.1)"""),
    ("G M", """plt.plot(history.history["accuracy"])
plt.plot(history.history["val_accuracy"])
plt.legend(["train", "val"])
plt.show()"""),
    ("M", """loss, acc = net.evaluate(X_test, y_test, verbose=0)
probs = net.predict(X_test, verbose=0)
print(acc, probs.argmax(axis=1)[:10])"""),
]

CORPUS = {
    "titanic": (TITANIC, "train.csv", titanic_data),
    "housing": (HOUSING, "houses.csv", housing_data),
    "digits": (DIGITS, None, None),
    "churn": (CHURN, "churn.csv", churn_data),
    "sensors": (SENSORS, "sensors.csv", sensor_data),
}


def header_truth(cells) -> dict:
    return {"cells": {str(i + 1): sorted(TOPS[t] for t in cats.split()) for i, (cats, _) in enumerate(cells)}}


def make_corpus():
    root = FIXTURES / "corpus"
    for name, (cells, data_file, maker) in CORPUS.items():
        case = root / name
        case.mkdir(parents=True, exist_ok=True)
        if data_file:
            maker(case / data_file)
        write_case(case, [src for _, src in cells], name, {"category": "corpus"})
        dump(case / "headers.json", header_truth(cells))
    print(f"corpus: {len(CORPUS)} notebooks")


def make_perf():
    """A 50-cell notebook assembled from the corpus pipelines (imports first)."""
    cells = []
    seen_imports = set()
    for name in ("titanic", "housing", "churn", "digits"):
        for _, src in CORPUS[name][0][1:]:
            cells.append(src)
    imports = []
    for name in CORPUS:
        for line in CORPUS[name][0][0][1].splitlines():
            if line not in seen_imports and "keras" not in line:
                seen_imports.add(line)
                imports.append(line)
    cells = ["\n".join(imports)] + cells[:49]
    case = FIXTURES / "perf"
    case.mkdir(parents=True, exist_ok=True)
    write_case(case, cells, "fifty_cells", trace=False)
    (case / "README.txt").write_text("Analysed for timing only; not executed.\n", encoding="utf-8")
    print(f"perf: {len(cells)} cells")


if __name__ == "__main__":
    make_corpus()
    make_perf()
    print(json.dumps({k: len(v[0]) for k, v in CORPUS.items()}))
