import csv
import os

import pytest

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture(scope="session")
def iris_csv(tmp_path_factory) -> str:
    """Path to the real iris CSV (150 rows, 4 features, 3 classes).

    Uses data/iris.csv when the user provides one, otherwise materializes the
    canonical copy bundled with scikit-learn.
    """
    provided = os.environ.get("SWARMCLUST_IRIS", os.path.join(REPO_ROOT, "data", "iris.csv"))
    if os.path.exists(provided):
        return provided
    sklearn_datasets = pytest.importorskip("sklearn.datasets")
    iris = sklearn_datasets.load_iris()
    path = tmp_path_factory.mktemp("data") / "iris.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sepal_length", "sepal_width", "petal_length", "petal_width", "species"])
        for row, target in zip(iris.data, iris.target):
            writer.writerow([repr(float(v)) for v in row] + [iris.target_names[target]])
    return str(path)
