#include "rx2dpl/regex/normalize.hpp"

#include <string_view>

namespace rx2dpl::regex {

namespace {

LiteralForm form_for(unsigned char c) {
  if (c < 0x20 || c >= 0x7F) return LiteralForm::representation;
  if (std::string_view(".^$|()[]{}*+?\\/").find(static_cast<char>(c)) != std::string_view::npos)
    return LiteralForm::escaped;
  return LiteralForm::plain;
}

Node simplify(const Node& n) {
  if (n.kind == NodeKind::char_class && n.items.size() == 1) {
    const ClassItem& it = n.items.front();
    if (it.kind == ClassItem::Kind::shorthand)
      return make_shorthand(n.negated ? negate(it.shorthand) : it.shorthand, n.span);
    if (it.kind == ClassItem::Kind::single && !n.negated) return make_literal({LiteralChar{it.lo, form_for(it.lo), static_cast<std::uint8_t>(n.span.end - n.span.begin)}}, n.span);
  }
  Node out = n;
  out.children.clear();
  for (const auto& c : n.children) out.children.push_back(simplify(c));
  if (out.kind == NodeKind::sequence) {
    std::vector<Node> merged;
    for (auto& c : out.children) {
      if (c.kind == NodeKind::literal && !merged.empty() && merged.back().kind == NodeKind::literal) {
        merged.back().literal.insert(merged.back().literal.end(), c.literal.begin(), c.literal.end());
        merged.back().span.end = c.span.end;
      } else {
        merged.push_back(std::move(c));
      }
    }
    out.children = std::move(merged);
  }
  return out;
}

}  // namespace

RegexAst normalize(const RegexAst& ast) {
  RegexAst out;
  out.source = ast.source;
  out.capture_count = ast.capture_count;
  out.root = simplify(ast.root);
  return out;
}

}  // namespace rx2dpl::regex
