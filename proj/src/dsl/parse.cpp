#include <fstream>
#include <set>
#include <sstream>

#include "lexer.hpp"
#include "paramspec/dsl.hpp"

namespace paramspec {

using dsl::Cursor;
using dsl::Tok;
using dsl::Token;

namespace {

struct RawTerm {
  std::string name;
  SourceLocation loc;
  bool parens = false;
  std::vector<RawTerm> args;
};

RawTerm parse_raw_term(Cursor& cur) {
  const Token& head = cur.expect(Tok::Ident);
  RawTerm t{head.text, head.loc, false, {}};
  if (cur.accept(Tok::LParen)) {
    t.parens = true;
    if (!cur.accept(Tok::RParen)) {
      do {
        t.args.push_back(parse_raw_term(cur));
      } while (cur.accept(Tok::Comma));
      cur.expect(Tok::RParen);
    }
  }
  return t;
}

// A bare identifier is a variable when the context binds it, otherwise a
// constant of the spec when one exists, otherwise an (unbound) variable.
Term resolve(const RawTerm& raw, const Context& ctx, const DecoratedSpec& spec) {
  if (!raw.parens) {
    if (find_binding(ctx, raw.name) || !spec.find_op(raw.name)) return Term::var(raw.name);
    return Term::app(raw.name);
  }
  std::vector<Term> args;
  args.reserve(raw.args.size());
  for (const auto& a : raw.args) args.push_back(resolve(a, ctx, spec));
  return Term::app(raw.name, std::move(args));
}

// Resolves and typechecks, rethrowing typing errors at the term's location.
Term resolve_checked(const RawTerm& raw, const Context& ctx, const DecoratedSpec& spec) {
  Term t = resolve(raw, ctx, spec);
  try {
    typecheck_term(ctx, t, spec);
  } catch (const Error& e) {
    throw Error(e.kind(), e.detail(), raw.loc);
  }
  return t;
}

std::vector<RawTerm> parse_tuple_or_term(Cursor& cur) {
  std::vector<RawTerm> out;
  if (cur.accept(Tok::LParen)) {
    if (!cur.accept(Tok::RParen)) {
      do {
        out.push_back(parse_raw_term(cur));
      } while (cur.accept(Tok::Comma));
      cur.expect(Tok::RParen);
    }
  } else {
    out.push_back(parse_raw_term(cur));
  }
  return out;
}

Error at(const Error& e, const SourceLocation& loc) {
  return Error(e.kind(), e.detail(), loc);
}

std::string header_word(Cursor& cur, std::string_view word) {
  cur.expect_word(word);
  return cur.expect(Tok::Ident).text;
}

}  // namespace

DecoratedSpec parse_spec(std::string_view text) {
  Cursor cur(dsl::lex(text));
  DecoratedSpec spec;
  const SourceLocation header_loc = cur.peek().loc;
  spec.name = header_word(cur, "spec");
  cur.expect(Tok::LBrace);

  std::vector<SourceLocation> sort_locs, op_locs, eq_locs;
  SourceLocation param_loc = header_loc;
  struct RawEq {
    Context context;
    RawTerm lhs, rhs;
  };
  std::vector<RawEq> raw_eqs;

  while (!cur.at(Tok::RBrace)) {
    const SourceLocation loc = cur.peek().loc;
    if (cur.accept_word("param")) {
      if (cur.accept_word("sort")) {
        if (spec.param_sort) cur.fail("parameter sort declared twice");
        spec.param_sort = cur.expect(Tok::Ident).text;
        spec.sorts.push_back(*spec.param_sort);
        sort_locs.push_back(loc);
      } else if (cur.accept_word("const")) {
        if (spec.param_const) cur.fail("parameter constant declared twice");
        OpDecl op;
        op.name = cur.expect(Tok::Ident).text;
        cur.expect(Tok::Colon);
        op.cod = cur.expect(Tok::Ident).text;
        spec.param_const = op.name;
        spec.ops.push_back(std::move(op));
        op_locs.push_back(loc);
      } else {
        cur.fail("expected 'sort' or 'const' after 'param'");
      }
      param_loc = loc;
    } else if (cur.accept_word("sort")) {
      spec.sorts.push_back(cur.expect(Tok::Ident).text);
      sort_locs.push_back(loc);
    } else if (cur.at_word("pure") || cur.at_word("op")) {
      OpDecl op;
      op.pure = cur.accept_word("pure");
      cur.expect_word("op");
      op.name = cur.expect(Tok::Ident).text;
      cur.expect(Tok::Colon);
      if (!cur.accept(Tok::Arrow)) {
        do {
          op.dom.push_back(cur.expect(Tok::Ident).text);
        } while (cur.accept(Tok::Comma));
        cur.expect(Tok::Arrow);
      }
      op.cod = cur.expect(Tok::Ident).text;
      spec.ops.push_back(std::move(op));
      op_locs.push_back(loc);
    } else if (cur.accept_word("eq")) {
      RawEq eq;
      cur.expect(Tok::LParen);
      if (!cur.accept(Tok::RParen)) {
        do {
          Binding b;
          b.name = cur.expect(Tok::Ident).text;
          cur.expect(Tok::Colon);
          b.sort = cur.expect(Tok::Ident).text;
          eq.context.push_back(std::move(b));
        } while (cur.accept(Tok::Comma));
        cur.expect(Tok::RParen);
      }
      eq.lhs = parse_raw_term(cur);
      cur.expect(Tok::Equals);
      eq.rhs = parse_raw_term(cur);
      raw_eqs.push_back(std::move(eq));
      eq_locs.push_back(loc);
    } else {
      cur.fail("expected 'sort', 'op', 'pure', 'param', 'eq' or '}'");
    }
  }
  cur.expect(Tok::RBrace);
  cur.expect(Tok::End);

  for (const auto& raw : raw_eqs) {
    spec.eqs.push_back({raw.context, resolve(raw.lhs, raw.context, spec),
                        resolve(raw.rhs, raw.context, spec)});
  }

  ValidationReport report = validate_spec(spec);
  if (!report.ok()) {
    const Diagnostic& d = report.diagnostics.front();
    SourceLocation loc = header_loc;
    switch (d.item.section) {
      case SpecItem::Section::Header: loc = header_loc; break;
      case SpecItem::Section::Sort: loc = sort_locs.at(d.item.index); break;
      case SpecItem::Section::Op: loc = op_locs.at(d.item.index); break;
      case SpecItem::Section::Equation: loc = eq_locs.at(d.item.index); break;
      case SpecItem::Section::Param: loc = param_loc; break;
    }
    throw Error(d.kind, d.message, loc);
  }
  return spec;
}

FinModel parse_model(std::string_view text, const SpecRef& spec) {
  Cursor cur(dsl::lex(text));
  FinModel model;
  model.spec = spec;
  model.name = header_word(cur, "model");
  cur.expect_word("for");
  const Token& spec_name = cur.expect(Tok::Ident);
  if (spec_name.text != spec->name) {
    throw Error(ErrorKind::NameMismatch,
                "model is for " + spec_name.text + ", expected " + spec->name,
                spec_name.loc);
  }
  model.partial = cur.accept_word("partial");
  cur.expect(Tok::LBrace);

  std::map<std::string, SourceLocation> table_locs;
  while (!cur.at(Tok::RBrace)) {
    const SourceLocation loc = cur.peek().loc;
    if (cur.accept_word("sort")) {
      const Token& sort = cur.expect(Tok::Ident);
      if (!spec->has_sort(sort.text)) {
        throw Error(ErrorKind::UnknownSort, "sort " + sort.text + " is not declared in " +
                                                spec->name,
                    sort.loc);
      }
      if (model.has_carrier(sort.text)) {
        throw Error(ErrorKind::DuplicateSort, "carrier of " + sort.text + " given twice",
                    loc);
      }
      cur.expect(Tok::Equals);
      cur.expect(Tok::LBrace);
      std::vector<std::string> labels;
      std::set<std::string> seen;
      if (!cur.at(Tok::RBrace)) {
        do {
          const Token& e = cur.expect(Tok::Ident);
          if (!seen.insert(e.text).second) {
            throw Error(ErrorKind::DuplicateElement,
                        "element " + e.text + " repeated in " + sort.text, e.loc);
          }
          labels.push_back(e.text);
        } while (cur.accept(Tok::Comma));
      }
      cur.expect(Tok::RBrace);
      model.carriers[sort.text] = std::move(labels);
    } else if (cur.accept_word("op")) {
      const Token& name = cur.expect(Tok::Ident);
      const OpDecl* op = spec->find_op(name.text);
      if (!op) {
        throw Error(ErrorKind::UnknownOp,
                    "'" + name.text + "' is not an operation of " + spec->name, name.loc);
      }
      if (model.has_table(op->name)) {
        throw Error(ErrorKind::DuplicateOp, "table of " + op->name + " given twice", loc);
      }
      for (const auto& s : op->dom) {
        if (!model.has_carrier(s)) {
          throw Error(ErrorKind::MissingCarrier,
                      "table of " + op->name + " precedes the carrier of " + s, loc);
        }
      }
      if (!model.has_carrier(op->cod)) {
        throw Error(ErrorKind::MissingCarrier,
                    "table of " + op->name + " precedes the carrier of " + op->cod, loc);
      }
      cur.expect(Tok::Equals);
      cur.expect(Tok::LBrace);
      const std::size_t rows = model.product_size(op->dom);
      std::vector<std::optional<Elem>> entries(rows);
      if (!cur.at(Tok::RBrace)) {
        do {
          const SourceLocation entry_loc = cur.peek().loc;
          cur.expect(Tok::LParen);
          std::vector<Elem> args;
          if (!cur.at(Tok::RParen)) {
            do {
              const Token& e = cur.expect(Tok::Ident);
              if (args.size() >= op->dom.size()) {
                throw Error(ErrorKind::ArityMismatch,
                            op->name + " takes " + std::to_string(op->dom.size()) +
                                " argument(s)",
                            e.loc);
              }
              try {
                args.push_back(model.element(op->dom[args.size()], e.text));
              } catch (const Error& err) {
                throw at(err, e.loc);
              }
            } while (cur.accept(Tok::Comma));
          }
          cur.expect(Tok::RParen);
          if (args.size() != op->dom.size()) {
            throw Error(ErrorKind::ArityMismatch,
                        op->name + " takes " + std::to_string(op->dom.size()) +
                            " argument(s)",
                        entry_loc);
          }
          cur.expect(Tok::Arrow);
          const Token& v = cur.expect(Tok::Ident);
          Elem value;
          try {
            value = model.element(op->cod, v.text);
          } catch (const Error& err) {
            throw at(err, v.loc);
          }
          auto& slot = entries[model.product_index(op->dom, args)];
          if (slot) {
            throw Error(ErrorKind::DuplicateTableEntry,
                        "entry of " + op->name + " given twice", entry_loc);
          }
          slot = value;
        } while (cur.accept(Tok::Comma));
      }
      cur.expect(Tok::RBrace);
      std::vector<Elem> table;
      table.reserve(rows);
      for (std::size_t r = 0; r < rows; ++r) {
        if (!entries[r]) {
          std::string tuple;
          auto args = model.product_tuple(op->dom, r);
          for (std::size_t k = 0; k < args.size(); ++k) {
            if (k) tuple += ", ";
            tuple += model.label(op->dom[k], args[k]);
          }
          throw Error(ErrorKind::MissingTableEntry,
                      "table of " + op->name + " has no entry for (" + tuple + ")", loc);
        }
        table.push_back(*entries[r]);
      }
      model.tables[op->name] = std::move(table);
      table_locs[op->name] = loc;
    } else {
      cur.fail("expected 'sort', 'op' or '}'");
    }
  }
  const SourceLocation end_loc = cur.peek().loc;
  cur.expect(Tok::RBrace);
  cur.expect(Tok::End);
  try {
    require_well_formed(model);
  } catch (const Error& e) {
    throw at(e, end_loc);
  }
  return model;
}

TheoryMorphism parse_morphism(std::string_view text, const SpecRef& source,
                              const SpecRef& target) {
  Cursor cur(dsl::lex(text));
  TheoryMorphism m;
  m.source = source;
  m.target = target;
  m.name = header_word(cur, "morphism");
  cur.expect(Tok::Colon);
  const Token& src = cur.expect(Tok::Ident);
  cur.expect(Tok::Arrow);
  const Token& tgt = cur.expect(Tok::Ident);
  if (src.text != source->name) {
    throw Error(ErrorKind::NameMismatch,
                "morphism source is " + src.text + ", expected " + source->name, src.loc);
  }
  if (tgt.text != target->name) {
    throw Error(ErrorKind::NameMismatch,
                "morphism target is " + tgt.text + ", expected " + target->name, tgt.loc);
  }
  cur.expect(Tok::LBrace);

  struct RawOp {
    SourceLocation loc;
    std::vector<std::string> vars;
    std::vector<RawTerm> terms;
  };
  std::map<std::string, RawOp> raw_ops;
  std::map<std::string, SourceLocation> sort_locs;
  while (!cur.at(Tok::RBrace)) {
    const SourceLocation loc = cur.peek().loc;
    if (cur.accept_word("sort")) {
      const Token& s = cur.expect(Tok::Ident);
      if (m.sort_map.count(s.text)) {
        throw Error(ErrorKind::DuplicateSort, "sort " + s.text + " mapped twice", loc);
      }
      cur.expect(Tok::Arrow);
      ProductType img;
      if (cur.accept(Tok::LParen)) {
        cur.expect(Tok::RParen);
      } else {
        do {
          img.push_back(cur.expect(Tok::Ident).text);
        } while (cur.accept(Tok::Comma));
      }
      m.sort_map[s.text] = std::move(img);
      sort_locs[s.text] = loc;
    } else if (cur.accept_word("op")) {
      const Token& name = cur.expect(Tok::Ident);
      if (raw_ops.count(name.text)) {
        throw Error(ErrorKind::DuplicateOp, "operation " + name.text + " mapped twice",
                    loc);
      }
      RawOp raw{loc, {}, {}};
      cur.expect(Tok::LParen);
      if (!cur.at(Tok::RParen)) {
        do {
          raw.vars.push_back(cur.expect(Tok::Ident).text);
        } while (cur.accept(Tok::Comma));
      }
      cur.expect(Tok::RParen);
      cur.expect(Tok::Arrow);
      raw.terms = parse_tuple_or_term(cur);
      raw_ops[name.text] = std::move(raw);
    } else {
      cur.fail("expected 'sort', 'op' or '}'");
    }
  }
  cur.expect(Tok::RBrace);
  cur.expect(Tok::End);

  for (const auto& [s, img] : m.sort_map) {
    if (!source->has_sort(s)) {
      throw Error(ErrorKind::UnknownSort, "'" + s + "' is not a sort of " + source->name,
                  sort_locs.at(s));
    }
    for (const auto& f : img) {
      if (!target->has_sort(f)) {
        throw Error(ErrorKind::UnknownSort,
                    "'" + f + "' is not a sort of " + target->name, sort_locs.at(s));
      }
    }
  }
  for (const auto& s : source->sorts) {
    if (!m.sort_map.count(s)) {
      throw Error(ErrorKind::UnmappedSymbol, "sort " + s + " is not mapped",
                  cur.peek().loc);
    }
  }
  for (const auto& [name, raw] : raw_ops) {
    const OpDecl* op = source->find_op(name);
    if (!op) {
      throw Error(ErrorKind::UnknownOp, "'" + name + "' is not an operation of " +
                                            source->name,
                  raw.loc);
    }
    const ProductType type = m.image_type(op->dom);
    if (type.size() != raw.vars.size()) {
      throw Error(ErrorKind::ArityMismatch,
                  "image of '" + name + "' binds " + std::to_string(raw.vars.size()) +
                      " variable(s), its domain image has " +
                      std::to_string(type.size()),
                  raw.loc);
    }
    TermTuple img;
    for (std::size_t i = 0; i < type.size(); ++i) img.context.push_back({raw.vars[i], type[i]});
    for (const auto& t : raw.terms) img.terms.push_back(resolve_checked(t, img.context, *target));
    m.op_map[name] = std::move(img);
  }
  for (const auto& op : source->ops) {
    if (!raw_ops.count(op.name)) {
      throw Error(ErrorKind::UnmappedSymbol, "operation " + op.name + " is not mapped",
                  cur.peek().loc);
    }
  }
  ValidationReport report = validate_morphism(m);
  if (!report.ok()) {
    const Diagnostic& d = report.diagnostics.front();
    SourceLocation loc = src.loc;
    if (d.item.section == SpecItem::Section::Op) {
      loc = raw_ops.at(source->ops.at(d.item.index).name).loc;
    } else if (d.item.section == SpecItem::Section::Sort) {
      loc = sort_locs.at(source->sorts.at(d.item.index));
    }
    throw Error(d.kind, d.message, loc);
  }
  return m;
}

std::pair<std::string, std::string> morphism_endpoints(std::string_view text) {
  Cursor cur(dsl::lex(text));
  header_word(cur, "morphism");
  cur.expect(Tok::Colon);
  std::string src = cur.expect(Tok::Ident).text;
  cur.expect(Tok::Arrow);
  std::string tgt = cur.expect(Tok::Ident).text;
  return {src, tgt};
}

std::string model_spec_name(std::string_view text) {
  Cursor cur(dsl::lex(text));
  header_word(cur, "model");
  cur.expect_word("for");
  return cur.expect(Tok::Ident).text;
}

FileKind file_kind(std::string_view path) {
  auto ends_with = [&](std::string_view ext) {
    return path.size() >= ext.size() && path.substr(path.size() - ext.size()) == ext;
  };
  if (ends_with(".eqth")) return FileKind::Spec;
  if (ends_with(".model")) return FileKind::Model;
  if (ends_with(".mor")) return FileKind::Morphism;
  return FileKind::Unknown;
}

SourceFile load_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  SourceFile file{path, buf.str(), file_kind(path)};
  try {
    dsl::require_utf8(file.text);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.detail(), e.location());
  }
  return file;
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed: " + path);
}

}  // namespace paramspec
