"""Example queries with the statement class and rule each must parse to.

Kept separate from the bundled demo corpus so the tests do not read the
expectations back from the package under test.
"""

GOLDEN = [
    ("PDM", "Keyword", "Cstmt"),
    ("CAD", "Keyword", "Cstmt"),
    ("Documents", "Keyword", "Cstmt"),
    ("CAD Designs", "Keyword", "Cstmt"),
    ("PDM Documents", "Keyword", "Cstmt"),
    ("want CAD", "ShortObjective", "Stmt2"),
    ("Give me CAD designs of Car parts", "ShortObjective", "Stmt2"),
    ("I am looking for CAD", "SimpleObjective", "Stmt1"),
    ("I am looking for PDM Systems", "SimpleObjective", "Stmt1"),
    ("I am looking for PDM Document", "SimpleObjective", "Stmt1"),
    ("I need CAD Designs", "SimpleObjective", "Stmt1"),
    ("I am looking for PDM Documents where Document Type is doc", "MultiCondition", "CondEq"),
    ("I am looking for CAD where document type is doc", "MultiCondition", "CondEq"),
    ("want PDM", "ShortObjective", "Stmt2"),
    ("need PDM", "ShortObjective", "Stmt2"),
    ("need CAD", "ShortObjective", "Stmt2"),
    ("give CAD desing", "ShortObjective", "Stmt2"),
    ("I am looking for PDM", "SimpleObjective", "Stmt1"),
    ("He is looking for CAD", "SimpleObjective", "Stmt1"),
    ("I am looking for CAD document", "SimpleObjective", "Stmt1"),
    ("I need Product and Project Document", "SimpleObjective", "Stmt1"),
    ("I am looking for PDM where Document Type is doc", "MultiCondition", "CondEq"),
    ("I am looking for PDM where document type is doc and pdf", "MultiCondition", "CondEq"),
    ("I am looking for CAD where document equals to Screw", "MultiCondition", "CondEq"),
    ("I want Document where Author equal to Michael", "MultiCondition", "CondEq"),
    ("I need PDF with Document Type doc and pdf", "MultiCondition", "CondWEq"),
    ("She need PDM with Document Type doc and Pdf", "MultiCondition", "CondWEq"),
    ("I need CAD with name MotorEngine and type BMP", "MultiCondition", "CondWEq"),
    ("I want Project with PDM name PDMDatabase", "MultiCondition", "CondWEq"),
    ("I am looking for CAD Design between Number 100 and 200", "MultiCondition", "CondBt"),
    ("We are looking for Project details between Date 01-09-08 and 01-09-09", "MultiCondition", "CondBt"),
    ("looking for a Project where PDMDatabase name is between 2000 to 2009 Date",
     "MultiCondition", "CondQBt"),
]
