"""Flow-sensitivity cases: the same name bound to different callees over time."""

FLOW_SENSITIVE = {
    "redefinition_across_cells": '''
def train():
    pass

def evaluate():
    pass
# %%
step = train
step()
# %%
step = evaluate
step()
''',
    "variable_reuse_models": '''
class LinearModel:
    def fit(self):
        pass

class DeepModel:
    def fit(self):
        pass
# %%
model = LinearModel()
model.fit()
# %%
model = DeepModel()
model.fit()
''',
    "branch_in_loop": '''
def first():
    pass

def second():
    pass

def third():
    pass

for i in range(2):
    if i == 0:
        op = first
    else:
        op = second
    op()
op = third
op()
''',
    "loop_carried_redefinition": '''
def first():
    pass

def second():
    pass

def third():
    pass

i = 0
f = first
while i < 2:
    f()
    f = second
    i += 1
f = third
f()
''',
    "import_rebinding": '''
from numpy import zeros as make
a = make(2)
# %%
from numpy import ones as make
b = make(2)
''',
    "local_shadows_global": '''
def first():
    pass

def second():
    pass

handler = first

def run():
    handler = second
    handler()

run()
handler()
''',
    "comprehension_shadowing": '''
def first():
    return 1

def second():
    return 2

f = first
values = [f() for f in [second]]
f()
''',
    "parameter_rebinding": '''
def first():
    pass

def second():
    pass

def run(action):
    action()
    action = second
    action()

run(first)
''',
}
