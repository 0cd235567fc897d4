"""Micro-benchmark sources, part A: modelled on PyCG's snippet categories.

Cells are separated by ``# %%`` lines.  Code that PyCG kept in a second
module is placed in an earlier cell.
"""

ARGS = {
    "assigned_call": '''
def param_func():
    pass

def func(a):
    a()

x = param_func
func(x)
''',
    "call": '''
def param_func():
    pass

def func(a):
    a()

func(param_func)
''',
    "default": '''
def param_func():
    pass

def func(a=param_func):
    a()

func()
''',
    "imported_assigned_call": '''
def param_func():
    pass

def func(a):
    a()
# %%
x = param_func
func(x)
''',
    "imported_call": '''
def func(a):
    a()
# %%
def param_func():
    pass

func(param_func)
''',
    "nested_call": '''
def func3():
    pass

def func2(a):
    a()

def func(a, b):
    a(b)

func(func2, func3)
''',
    "param_call": '''
def func3():
    pass

def func2(a):
    a()

def func(a, b):
    a(b)

func(func2, func3)
func2(func3)
''',
}

ASSIGNMENTS = {
    "chained": '''
def func1():
    pass

def func2():
    pass

a = b = func1
b()
a = func2
a()
''',
    "recursive_tuple": '''
def func1():
    pass

def func2():
    pass

a, (b, c) = func1, (func2, func1)
a()
b()
c()
''',
    "starred": '''
def func1():
    pass

def func2():
    pass

def func3():
    pass

a, *b = func1, func2, func3
a()
''',
    "tuple": '''
def func1():
    pass

def func2():
    pass

a, b = func1, func2
a()
b()
''',
}

BUILTINS = {
    "functions": '''
a = [3, 1, 2]
b = len(a)
c = sorted(a)
d = max(a) + min(a)
e = abs(-3)
''',
    "map": '''
def func(x):
    return x + 1

out = list(map(func, [1, 2, 3]))
''',
    "print": '''
def func():
    return "hello"

print(func())
''',
    "types": '''
x = int("3")
y = str(x)
z = float(y)
w = isinstance(z, float)
''',
    "str_methods": '''
s = "Hello World"
t = s.lower()
u = t.split(" ")
v = ", ".join(u)
w = v.replace(",", ";").strip()
''',
}

CLASSES = {
    "assigned_call": '''
class MyClass:
    def func(self):
        pass

a = MyClass()
b = a.func
b()
''',
    "assigned_self_call": '''
class MyClass:
    def __init__(self):
        self.a = self.func

    def func(self):
        pass

    def call(self):
        self.a()

obj = MyClass()
obj.call()
''',
    "base_class_attr": '''
class Base:
    def func(self):
        pass

class Child(Base):
    pass

c = Child()
c.func()
''',
    "base_class_calls_child": '''
class Base:
    def run(self):
        self.step()

class Child(Base):
    def step(self):
        pass

c = Child()
c.run()
''',
    "call": '''
class MyClass:
    def func(self):
        pass

MyClass().func()
''',
    "direct_call": '''
class MyClass:
    def __init__(self):
        pass

    def func(self):
        pass

a = MyClass()
a.func()
''',
    "imported_attr_access": '''
class MyClass:
    def __init__(self):
        self.attr = 1

    def func(self):
        return self.attr
# %%
obj = MyClass()
obj.func()
''',
    "imported_call_without_init": '''
class MyClass:
    def func(self):
        pass
# %%
a = MyClass()
a.func()
''',
    "instance": '''
class MyClass:
    def func(self):
        pass

def get_instance():
    return MyClass()

get_instance().func()
''',
    "nested_call": '''
class MyClass:
    def func1(self):
        pass

    def func2(self):
        self.func1()

    def func3(self):
        self.func2()

a = MyClass()
a.func3()
''',
    "nested_class_calls": '''
class Outer:
    class Inner:
        def func(self):
            pass

    def make(self):
        return self.Inner()

Outer().make().func()
''',
    "param_call": '''
class MyClass:
    def func(self, f):
        f()

def param():
    pass

a = MyClass()
a.func(param)
''',
    "return_call": '''
class MyClass:
    def func(self):
        return self.other

    def other(self):
        pass

a = MyClass()
a.func()()
''',
    "self_assign_func": '''
def helper():
    pass

class MyClass:
    def __init__(self):
        self.f = helper

    def call(self):
        self.f()

MyClass().call()
''',
    "self_call": '''
class MyClass:
    def func1(self):
        pass

    def func2(self):
        self.func1()

MyClass().func2()
''',
    "static_method_call": '''
class MyClass:
    @staticmethod
    def func():
        pass

MyClass.func()
MyClass().func()
''',
    "classmethod_call": '''
class MyClass:
    @classmethod
    def build(cls):
        return cls()

    def func(self):
        pass

MyClass.build().func()
''',
    "super_class_return": '''
class Base:
    def func(self):
        return self

    def other(self):
        pass

class Child(Base):
    pass

Child().func().other()
''',
    "attribute_function": '''
class MyClass:
    def func(self):
        pass

obj = MyClass()
obj.alias = obj.func
obj.alias()
''',
    "property_access": '''
class MyClass:
    @property
    def value(self):
        return self.compute()

    def compute(self):
        return 1

x = MyClass().value
''',
    "dunder_call": '''
class Adder:
    def __call__(self, x):
        return x + 1

add = Adder()
y = add(1)
''',
}

DECORATORS = {
    "assigned": '''
def dec(f):
    return f

@dec
def func():
    pass

func()
''',
    "call": '''
def dec(f):
    def wrapper():
        return f()
    return wrapper

@dec
def func():
    pass

func()
''',
    "nested": '''
def dec1(f):
    def inner():
        return f()
    return inner

def dec2(f):
    def inner():
        return f()
    return inner

@dec1
@dec2
def func():
    pass

func()
''',
    "param_call": '''
def dec(n):
    def deco(f):
        def wrapper():
            return f()
        return wrapper
    return deco

@dec(3)
def func():
    pass

func()
''',
    "return": '''
def helper():
    pass

def dec(f):
    return helper

@dec
def func():
    pass

func()
''',
    "method_decorator": '''
def logged(f):
    def wrapper(self):
        return f(self)
    return wrapper

class MyClass:
    @logged
    def func(self):
        pass

MyClass().func()
''',
}

DICTS = {
    "add_key": '''
def func():
    pass

d = {}
d["a"] = func
d["a"]()
''',
    "assign": '''
def func():
    pass

d = {"a": func}
f = d["a"]
f()
''',
    "call": '''
def func():
    pass

d = {"a": func}
d["a"]()
''',
    "get": '''
def func():
    pass

d = {"a": func}
d.get("a")()
''',
    "nested": '''
def func():
    pass

d = {"a": {"b": func}}
d["a"]["b"]()
''',
    "param": '''
def func():
    pass

def call(d):
    d["a"]()

call({"a": func})
''',
    "return": '''
def func():
    pass

def make():
    return {"a": func}

make()["a"]()
''',
    "update": '''
def func():
    pass

d = {}
d.update({"a": func})
d["a"]()
''',
    "values": '''
def func():
    pass

d = {"a": func}
for f in d.values():
    f()
''',
    "items": '''
def func():
    pass

d = {"a": func}
for k, f in d.items():
    f()
''',
}

DIRECT_CALLS = {
    "assigned_call": '''
def func():
    pass

a = func
a()
''',
    "imported_return_call": '''
def func():
    def inner():
        pass
    return inner
# %%
func()()
''',
    "return_call": '''
def func():
    def inner():
        pass
    return inner

func()()
''',
    "with_parameters": '''
def func(a, b):
    return a + b

func(1, 2)
''',
}

DYNAMIC = {
    "eval": '''
def func():
    pass

eval("func()")
''',
}

EXCEPTIONS = {
    "raise": '''
class MyError(Exception):
    pass

try:
    raise MyError()
except MyError:
    pass
''',
    "raise_assigned": '''
class MyError(Exception):
    pass

err = MyError("x")
try:
    raise err
except MyError as e:
    print(e)
''',
    "raise_attr": '''
class MyError(Exception):
    def describe(self):
        return "x"

try:
    raise MyError()
except MyError as e:
    e.describe()
''',
}
