"""Micro-benchmark sources, part B."""

FUNCTIONS = {
    "assigned_call": '''
def func():
    pass

a = func
b = a
b()
''',
    "call": '''
def func():
    pass

func()
''',
    "imported_call": '''
def func():
    pass
# %%
func()
''',
    "nested_def": '''
def outer():
    def inner():
        pass
    inner()

outer()
''',
    "closure": '''
def outer():
    def helper():
        pass
    def inner():
        helper()
    return inner

f = outer()
f()
''',
}

GENERATORS = {
    "iterable": '''
def func():
    pass

def gen():
    yield func

for f in gen():
    f()
''',
    "iterable_assigned": '''
def func():
    pass

def gen():
    yield func

g = gen()
for f in g:
    f()
''',
    "next": '''
def func():
    pass

def gen():
    yield func

g = gen()
next(g)()
''',
    "yield_from": '''
def func():
    pass

def inner():
    yield func

def outer():
    yield from inner()

for f in outer():
    f()
''',
    "generator_expression": '''
def func():
    pass

for f in (g for g in [func]):
    f()
''',
    "list_of_generator": '''
def func1():
    pass

def func2():
    pass

def gen():
    yield func1
    yield func2

for f in list(gen()):
    f()
''',
}

IMPORTS = {
    "import_as": '''
import numpy as np
# %%
a = np.zeros(3)
''',
    "from_import": '''
from numpy import zeros
# %%
a = zeros(3)
''',
    "from_import_as": '''
from numpy import ones as make_ones
# %%
a = make_ones(3)
''',
    "submodule": '''
import matplotlib.pyplot as plt
# %%
fig = plt.figure()
plt.close(fig)
''',
    "import_chain": '''
import sklearn.model_selection
# %%
parts = sklearn.model_selection.train_test_split([1, 2, 3, 4], test_size=0.5)
''',
    "import_all": '''
from numpy import *
# %%
a = zeros(3)
''',
    "import_in_function": '''
def make():
    import numpy as np
    return np.ones(2)

make()
''',
    "reimport_shadow": '''
import numpy as np
# %%
a = np.zeros(2)
import pandas as np
b = np.DataFrame({"x": [1]})
''',
    "class_from_import": '''
from sklearn.preprocessing import StandardScaler
# %%
scaler = StandardScaler()
out = scaler.fit_transform([[1.0], [2.0]])
''',
    "method_alias": '''
import pandas as pd
# %%
df = pd.DataFrame({"a": [1, 2]})
m = df.agg("min")
''',
}

KWARGS = {
    "assigned_call": '''
def func():
    pass

def call(f=None):
    f()

x = func
call(f=x)
''',
    "call": '''
def func():
    pass

def call(f):
    f()

call(f=func)
''',
    "chained_call": '''
def func():
    pass

def inner(f):
    f()

def outer(g, f):
    g(f=f)

outer(f=func, g=inner)
''',
    "double_star": '''
def func():
    pass

def call(**kwargs):
    kwargs["f"]()

call(f=func)
''',
}

LAMBDAS = {
    "call": '''
f = lambda: 1
f()
''',
    "chained_calls": '''
f = lambda: (lambda: 1)
f()()
''',
    "parameter_call": '''
def func():
    pass

g = lambda h: h()
g(func)
''',
    "return_call": '''
def func():
    return lambda: 1

func()()
''',
    "calls_in_lambda": '''
def func():
    pass

g = lambda: func()
g()
''',
    "sorted_key": '''
def key(x):
    return -x

out = sorted([1, 2, 3], key=lambda v: key(v))
''',
}

LISTS = {
    "simple": '''
def func():
    pass

a = [func]
a[0]()
''',
    "nested": '''
def func():
    pass

a = [[func]]
a[0][0]()
''',
    "comprehension_val": '''
def func():
    return 1

a = [func() for _ in range(2)]
''',
    "comprehension_if": '''
def func():
    return True

a = [x for x in range(3) if func()]
''',
    "append": '''
def func():
    pass

a = []
a.append(func)
a[0]()
''',
    "loop": '''
def func1():
    pass

def func2():
    pass

for f in [func1, func2]:
    f()
''',
    "param_index": '''
def func():
    pass

def call(lst, i):
    lst[i]()

call([func], 0)
''',
}

MRO = {
    "basic": '''
class A:
    def func(self):
        pass

class B(A):
    def func(self):
        pass

class C(B):
    pass

C().func()
''',
    "two_parents": '''
class A:
    def func(self):
        pass

class B:
    def func(self):
        pass

class C(A, B):
    pass

C().func()
''',
    "two_parents_method_defined": '''
class A:
    def func(self):
        pass

class B:
    def func(self):
        pass

class C(A, B):
    def func(self):
        pass

C().func()
''',
    "diamond": '''
class A:
    def func(self):
        pass

class B(A):
    pass

class C(A):
    def func(self):
        pass

class D(B, C):
    pass

D().func()
''',
    "super_call": '''
class A:
    def func(self):
        pass

class B(A):
    def func(self):
        super().func()

B().func()
''',
    "super_init": '''
class A:
    def __init__(self):
        self.setup()

    def setup(self):
        pass

class B(A):
    def __init__(self):
        super().__init__()

b = B()
''',
    "self_assignment": '''
class A:
    def func(self):
        pass

class B(A):
    def __init__(self):
        self.f = self.func

    def run(self):
        self.f()

B().run()
''',
}

RETURNS = {
    "call": '''
def func():
    pass

def ret():
    return func

ret()()
''',
    "imported_call": '''
def func():
    pass

def ret():
    return func
# %%
f = ret()
f()
''',
    "return_complex": '''
def func1():
    pass

def func2():
    pass

def ret():
    return func1, func2

a, b = ret()
a()
b()
''',
    "return_instance": '''
class A:
    def func(self):
        pass

def make():
    return A()

obj = make()
obj.func()
''',
    "return_param": '''
def func():
    pass

def ident(x):
    return x

ident(func)()
''',
}

# context-insensitivity: one summary per function merges all callers
CONTEXT = {
    "identity_two_callers": '''
def func1():
    pass

def func2():
    pass

def ident(x):
    return x

a = ident(func1)
b = ident(func2)
a()
b()
''',
    "shared_parameter": '''
def func1():
    pass

def func2():
    pass

def call(f):
    f()

call(func1)
call(func2)
''',
}
