#include "renormalist/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace renormalist {

TomlValue& TomlTable::set(const std::string& key, TomlValue v) {
  if (!entries.count(key)) order.push_back(key);
  return entries[key] = std::move(v);
}
const TomlValue* TomlTable::find(const std::string& key) const {
  auto it = entries.find(key);
  return it == entries.end() ? nullptr : &it->second;
}

const std::string& TomlValue::str() const {
  if (!is_string()) throw ConfigError("expected string value");
  return std::get<std::string>(v);
}
long long TomlValue::integer() const {
  if (!std::holds_alternative<long long>(v)) throw ConfigError("expected integer value");
  return std::get<long long>(v);
}
bool TomlValue::boolean() const {
  if (!std::holds_alternative<bool>(v)) throw ConfigError("expected boolean value");
  return std::get<bool>(v);
}
const TomlArray& TomlValue::array() const {
  if (!is_array()) throw ConfigError("expected array value");
  return std::get<TomlArray>(v);
}
const TomlTable& TomlValue::table() const {
  if (!is_table()) throw ConfigError("expected table value");
  return std::get<TomlTable>(v);
}
TomlTable& TomlValue::table() {
  if (!is_table()) throw ConfigError("expected table value");
  return std::get<TomlTable>(v);
}

bool operator==(const TomlValue& a, const TomlValue& b) {
  if (a.v.index() != b.v.index()) return false;
  if (a.is_table()) return a.table().entries == b.table().entries;
  if (a.is_array()) {
    const auto& x = a.array();
    const auto& y = b.array();
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
      if (!(x[i] == y[i])) return false;
    return true;
  }
  return a.v == b.v;
}
bool operator==(const TomlTable& a, const TomlTable& b) { return a.entries == b.entries; }

namespace {

struct TomlCursor {
  const std::string& text;
  size_t i = 0;
  int line = 1;

  bool done() const { return i >= text.size(); }
  char peek() const { return i < text.size() ? text[i] : '\0'; }
  char get() {
    char c = text[i++];
    if (c == '\n') ++line;
    return c;
  }
  void skip_ws(bool newlines) {
    while (!done()) {
      char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') get();
      } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        get();
      } else {
        break;
      }
    }
  }
  bool eat(char c, bool newlines = false) {
    skip_ws(newlines);
    if (peek() == c) {
      get();
      return true;
    }
    return false;
  }
  std::string bare_or_quoted_key() {
    skip_ws(false);
    if (peek() == '"') return quoted_string();
    size_t start = i;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                       peek() == '-'))
      get();
    if (i == start) throw ConfigError("expected key", line);
    return text.substr(start, i - start);
  }
  std::string quoted_string() {
    skip_ws(false);
    if (!eat('"')) throw ConfigError("expected '\"'", line);
    std::string out;
    while (!done() && peek() != '"') {
      char c = get();
      if (c == '\\' && !done()) {
        char e = get();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: throw ConfigError("unknown escape", line);
        }
      } else {
        out += c;
      }
    }
    if (!eat('"')) throw ConfigError("unterminated string", line);
    return out;
  }
  TomlValue value() {
    skip_ws(false);
    char c = peek();
    if (c == '"') return TomlValue{quoted_string()};
    if (c == '[') {
      get();
      TomlArray arr;
      skip_ws(true);
      if (eat(']', true)) return TomlValue{arr};
      while (true) {
        skip_ws(true);
        arr.push_back(value());
        skip_ws(true);
        if (eat(',', true)) continue;
        if (eat(']', true)) break;
        throw ConfigError("expected ',' or ']' in array", line);
      }
      return TomlValue{arr};
    }
    if (c == '{') {
      get();
      TomlTable tbl;
      skip_ws(false);
      if (eat('}')) return TomlValue{tbl};
      while (true) {
        std::string key = bare_or_quoted_key();
        if (!eat('=')) throw ConfigError("expected '=' in inline table", line);
        tbl.set(key, value());
        if (eat(',')) continue;
        if (eat('}')) break;
        throw ConfigError("expected ',' or '}' in inline table", line);
      }
      return TomlValue{tbl};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (!done() && std::isalpha(static_cast<unsigned char>(peek()))) get();
      std::string word = text.substr(start, i - start);
      if (word == "true") return TomlValue{true};
      if (word == "false") return TomlValue{false};
      throw ConfigError("unknown literal '" + word + "'", line);
    }
    // integer (rationals and homogeneities are written as strings)
    size_t start = i;
    if (peek() == '-' || peek() == '+') get();
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) get();
    if (i == start) throw ConfigError("expected value", line);
    return TomlValue{static_cast<long long>(std::stoll(text.substr(start, i - start)))};
  }
};

TomlTable& descend(TomlTable& root, const std::vector<std::string>& path) {
  TomlTable* cur = &root;
  for (const std::string& key : path) {
    auto it = cur->entries.find(key);
    if (it == cur->entries.end()) {
      cur->set(key, TomlValue{TomlTable{}});
      it = cur->entries.find(key);
    }
    cur = &it->second.table();
  }
  return *cur;
}

std::vector<std::string> parse_path(TomlCursor& c) {
  std::vector<std::string> path;
  path.push_back(c.bare_or_quoted_key());
  while (c.eat('.')) path.push_back(c.bare_or_quoted_key());
  return path;
}

}  // namespace

TomlTable parse_toml(const std::string& text) {
  TomlCursor c{text};
  TomlTable root;
  TomlTable* current = &root;
  while (true) {
    c.skip_ws(true);
    if (c.done()) break;
    if (c.peek() == '[') {
      c.get();
      bool array_table = c.peek() == '[';
      if (array_table) c.get();
      auto path = parse_path(c);
      if (!c.eat(']')) throw ConfigError("expected ']'", c.line);
      if (array_table && !c.eat(']')) throw ConfigError("expected ']]'", c.line);
      if (array_table) {
        TomlTable& parent = descend(root, {path.begin(), path.end() - 1});
        auto it = parent.entries.find(path.back());
        if (it == parent.entries.end()) {
          parent.set(path.back(), TomlValue{TomlArray{}});
          it = parent.entries.find(path.back());
        }
        auto& arr = std::get<TomlArray>(it->second.v);
        arr.push_back(TomlValue{TomlTable{}});
        current = &std::get<TomlTable>(arr.back().v);
      } else {
        current = &descend(root, path);
      }
      continue;
    }
    std::string key = c.bare_or_quoted_key();
    std::vector<std::string> path{key};
    while (c.eat('.')) path.push_back(c.bare_or_quoted_key());
    if (!c.eat('=')) throw ConfigError("expected '=' after key", c.line);
    TomlValue v = c.value();
    TomlTable& tbl = path.size() == 1 ? *current : descend(*current, {path.begin(), path.end() - 1});
    if (tbl.entries.count(path.back())) throw ConfigError("duplicate key " + path.back(), c.line);
    tbl.set(path.back(), std::move(v));
  }
  return root;
}

namespace {

bool bare_ok(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return true;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string key_str(const std::string& key) { return bare_ok(key) ? key : quote(key); }

void write_value(std::ostream& os, const TomlValue& v);

void write_inline_table(std::ostream& os, const TomlTable& t) {
  os << "{ ";
  bool first = true;
  for (const std::string& key : t.order) {
    if (!first) os << ", ";
    first = false;
    os << key_str(key) << " = ";
    write_value(os, t.entries.at(key));
  }
  os << " }";
}

void write_value(std::ostream& os, const TomlValue& v) {
  if (v.is_string()) os << quote(v.str());
  else if (std::holds_alternative<long long>(v.v)) os << v.integer();
  else if (std::holds_alternative<bool>(v.v)) os << (v.boolean() ? "true" : "false");
  else if (v.is_array()) {
    os << "[";
    const auto& arr = v.array();
    for (size_t i = 0; i < arr.size(); ++i) {
      if (i) os << ", ";
      write_value(os, arr[i]);
    }
    os << "]";
  } else {
    write_inline_table(os, v.table());
  }
}

bool is_table_array(const TomlValue& v) {
  if (!v.is_array() || v.array().empty()) return false;
  for (const auto& e : v.array())
    if (!e.is_table()) return false;
  return true;
}

// every value inline, used inside array-of-tables elements
void write_table_flat(std::ostream& os, const TomlTable& t) {
  for (const std::string& key : t.order) {
    os << key_str(key) << " = ";
    write_value(os, t.entries.at(key));
    os << "\n";
  }
}

void write_table(std::ostream& os, const TomlTable& t, const std::string& prefix) {
  // plain key/value pairs first
  for (const std::string& key : t.order) {
    const TomlValue& v = t.entries.at(key);
    if (v.is_table() || is_table_array(v)) continue;
    os << key_str(key) << " = ";
    write_value(os, v);
    os << "\n";
  }
  for (const std::string& key : t.order) {
    const TomlValue& v = t.entries.at(key);
    std::string path = prefix.empty() ? key_str(key) : prefix + "." + key_str(key);
    if (v.is_table()) {
      os << "\n[" << path << "]\n";
      write_table(os, v.table(), path);
    } else if (is_table_array(v)) {
      for (const auto& e : v.array()) {
        os << "\n[[" << path << "]]\n";
        write_table_flat(os, e.table());
      }
    }
  }
}

}  // namespace

std::string serialize_toml(const TomlTable& doc) {
  std::ostringstream os;
  write_table(os, doc, "");
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

SymbolicExpr parse_equation_term(const EdgeSystem& sys, const TomlTable& t) {
  SymTerm term;
  if (const TomlValue* c = t.find("coeff")) term.coeff = Rational::parse(c->str());
  if (const TomlValue* p = t.find("powers")) {
    for (const std::string& key : p->table().order) {
      sys.require(key);
      term.powers[key] = static_cast<int>(p->table().entries.at(key).integer());
    }
  }
  if (const TomlValue* f = t.find("func")) {
    FuncFactor ff;
    ff.name = f->str();
    const TomlValue* arg = t.find("func_arg");
    if (!arg) throw ConfigError("equation term with func needs func_arg");
    ff.arg = arg->str();
    sys.require(ff.arg);
    term.funcs.push_back(ff);
  }
  if (const TomlValue* tn = t.find("tensor")) {
    TensorFactor tf;
    tf.name = tn->str();
    const TomlValue* slots = t.find("tensor_slots");
    if (!slots) throw ConfigError("equation term with tensor needs tensor_slots");
    for (const auto& s : slots->array()) {
      sys.require(s.str());
      tf.filled[s.str()]++;
    }
    term.tensors.push_back(tf);
  }
  if (const TomlValue* cs = t.find("constants")) {
    for (const std::string& key : cs->table().order)
      term.constants[key] = static_cast<int>(cs->table().entries.at(key).integer());
  }
  return SymbolicExpr(std::move(term));
}

}  // namespace

std::vector<NodeType> Fixture::sector_roots(const SectorSpec& s) const {
  std::vector<NodeType> roots;
  if (!s.roots.empty()) {
    for (const auto& ids : s.roots) {
      std::vector<int> edges;
      for (const auto& id : ids) edges.push_back(sys->require(id));
      roots.push_back(NodeType(std::move(edges)));
    }
  } else {
    roots = rule->entries(sys->require(s.edge));
  }
  return roots;
}

std::vector<Tree> Fixture::run_sector(const SectorSpec& s) const {
  GenerateConfig cfg;
  cfg.gamma = s.gamma;
  cfg.node_budget = node_budget;
  if (s.planted) return generate_solution_sector(*rule, sys->require(s.edge), cfg);
  return generate_trees(*rule, sector_roots(s), cfg);
}

Fixture fixture_from_toml(const TomlTable& doc) {
  Fixture fx;
  fx.sys = std::make_shared<EdgeSystem>();
  EdgeSystem& sys = *fx.sys;

  if (const TomlValue* v = doc.find("version")) fx.version = static_cast<int>(v->integer());
  if (const TomlValue* v = doc.find("name")) fx.name = v->str();
  if (const TomlValue* v = doc.find("kappa_numeric")) fx.kappa_numeric = Rational::parse(v->str());
  if (const TomlValue* v = doc.find("node_budget")) fx.node_budget = v->integer();

  const TomlValue* labels = doc.find("labels");
  if (!labels) throw ConfigError("missing [labels]");
  const TomlValue* pairs = labels->table().find("pairs");
  if (!pairs) throw ConfigError("missing labels.pairs");
  for (const auto& pair : pairs->array()) {
    const auto& arr = pair.array();
    if (arr.size() != 2) throw ConfigError("label pairs must have two entries");
    sys.labels.declare_pair(arr[0].str(), arr[1].str());
  }

  const TomlValue* edges = doc.find("edges");
  if (!edges) throw ConfigError("missing [edges.*]");
  std::map<std::string, std::string> iota_pending;
  for (const std::string& id : edges->table().order) {
    const TomlTable& e = edges->table().entries.at(id).table();
    EdgeType et;
    et.id = id;
    const TomlValue* cls = e.find("class");
    if (!cls) throw ConfigError("edge " + id + " missing class");
    std::string c = cls->str();
    if (c == "plus") et.cls = EdgeClass::Plus;
    else if (c == "zero") et.cls = EdgeClass::Zero;
    else if (c == "minus") et.cls = EdgeClass::Minus;
    else throw ConfigError("edge " + id + " has unknown class " + c);
    if (const TomlValue* d = e.find("degree")) et.degree = Homogeneity::parse(d->str());
    if (et.cls == EdgeClass::Plus) {
      et.plus_label = sys.labels.id(e.find("plus") ? e.find("plus")->str()
                                                   : throw ConfigError(id + " missing plus"));
      et.minus_label = sys.labels.id(e.find("minus") ? e.find("minus")->str()
                                                     : throw ConfigError(id + " missing minus"));
      if (const TomlValue* io = e.find("iota")) iota_pending[id] = io->str();
    } else if (et.cls == EdgeClass::Minus) {
      et.minus_label = sys.labels.id(e.find("label") ? e.find("label")->str()
                                                     : throw ConfigError(id + " missing label"));
    } else {
      if (const TomlValue* ix = e.find("index"))
        for (const auto& l : ix->array()) et.zero_index.add(sys.labels.id(l.str()), 1);
    }
    sys.add(et);
  }
  // resolve iota after all edges exist (cannot mutate stored edges through the
  // public surface, so rebuild with iota indices)
  {
    EdgeSystem rebuilt;
    rebuilt.labels = sys.labels;
    for (int i = 0; i < sys.size(); ++i) {
      EdgeType et = sys.edge(i);
      auto it = iota_pending.find(et.id);
      if (it != iota_pending.end()) et.iota = sys.require(it->second);
      rebuilt.add(et);
    }
    sys = rebuilt;
  }
  sys.validate();

  fx.rule = std::make_shared<Rule>(&sys);
  bool normalize = false;
  bool check_indices = true;
  if (const TomlValue* rv = doc.find("rule")) {
    const TomlTable& rt = rv->table();
    for (const std::string& key : rt.order) {
      if (key == "normalize") {
        normalize = rt.entries.at(key).boolean();
        continue;
      }
      if (key == "check_indices") {
        check_indices = rt.entries.at(key).boolean();
        continue;
      }
      int target = sys.require(key);
      for (const auto& entry : rt.entries.at(key).array()) {
        std::vector<int> node;
        for (const auto& id : entry.array()) node.push_back(sys.require(id.str()));
        fx.rule->add(target, NodeType(std::move(node)));
      }
    }
  }
  fx.rule->validate(check_indices);
  if (normalize) *fx.rule = normalize_rule(*fx.rule);

  if (const TomlValue* sv = doc.find("sectors")) {
    for (const std::string& name : sv->table().order) {
      const TomlTable& st = sv->table().entries.at(name).table();
      SectorSpec spec;
      spec.name = name;
      if (const TomlValue* e = st.find("edge")) spec.edge = e->str();
      if (const TomlValue* g = st.find("gamma")) spec.gamma = Homogeneity::parse(g->str());
      if (const TomlValue* p = st.find("planted")) spec.planted = p->boolean();
      if (const TomlValue* r = st.find("roots")) {
        for (const auto& root : r->array()) {
          std::vector<std::string> ids;
          for (const auto& id : root.array()) ids.push_back(id.str());
          spec.roots.push_back(std::move(ids));
        }
      }
      fx.sectors.push_back(std::move(spec));
    }
  }

  if (const TomlValue* ev = doc.find("equation")) {
    fx.has_equation = true;
    fx.equation.sys = fx.sys.get();
    const TomlTable& et = ev->table();
    if (const TomlValue* terms = et.find("term")) {
      for (const auto& term : terms->array()) {
        const TomlValue* comp = term.table().find("component");
        if (!comp) throw ConfigError("equation term missing component");
        fx.equation.rhs[comp->str()].add(parse_equation_term(sys, term.table()));
      }
    }
    if (const TomlValue* nd = et.find("noise_degree")) {
      for (const std::string& key : nd->table().order)
        fx.equation.noise_degree[key] = static_cast<int>(nd->table().entries.at(key).integer());
    }
    validate_equation(fx.equation);
  }
  if (const TomlValue* dv = doc.find("display")) {
    for (const std::string& key : dv->table().order)
      fx.equation.display[key] = dv->table().entries.at(key).str();
  }
  if (const TomlValue* cv = doc.find("contractions")) {
    for (const std::string& key : cv->table().order) {
      auto bar = key.find('|');
      if (bar == std::string::npos)
        throw ConfigError("contraction keys look like \"tensor|symbol\": " + key);
      fx.equation.contractions[{key.substr(0, bar), key.substr(bar + 1)}] =
          cv->table().entries.at(key).str();
    }
  }

  fx.character = std::make_shared<Character>(fx.sys.get());
  if (const TomlValue* ch = doc.find("character")) {
    for (const std::string& term : ch->table().order) {
      const TomlTable& entry = ch->table().entries.at(term).table();
      const TomlValue* val = entry.find("value");
      if (!val) throw ConfigError("character entry missing value: " + term);
      Tree tree = parse_tree_term(sys, term);
      fx.character->set_uncolored(tree, Polynomial::parse(val->str()));
      fx.character_terms.push_back({term, val->str()});
    }
  }
  return fx;
}

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return fixture_from_toml(parse_toml(ss.str()));
}

}  // namespace renormalist
