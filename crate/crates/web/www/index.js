import init, { tree_rows, ancestors, symmetry_checks } from './pkg/cwforest_web.js';

const $ = (id) => document.getElementById(id);
const SVG = 'http://www.w3.org/2000/svg';

function params() {
  return [Number($('u').value), Number($('v').value), $('root').value.trim()];
}

function fail(target, err) {
  target.innerHTML = '';
  const p = document.createElement('p');
  p.className = 'error';
  p.textContent = String(err);
  target.appendChild(p);
}

function el(name, attrs) {
  const node = document.createElementNS(SVG, name);
  for (const [k, val] of Object.entries(attrs)) node.setAttribute(k, val);
  return node;
}

function drawTree() {
  const target = $('tree');
  let doc;
  try {
    const [u, v, root] = params();
    doc = JSON.parse(tree_rows(u, v, root, Number($('depth').value)));
  } catch (err) {
    return fail(target, err);
  }
  const rows = doc.rows;
  const leaves = rows[rows.length - 1].length;
  const width = Math.max(600, leaves * 48);
  const rowGap = 56;
  const svg = el('svg', { width, height: rows.length * rowGap + 10 });
  const x = (n, i) => ((i + 0.5) * width) / rows[n].length;
  const y = (n) => n * rowGap + 20;

  rows.forEach((row, n) => {
    row.forEach((_, i) => {
      if (n + 1 < rows.length) {
        for (const k of [2 * i, 2 * i + 1]) {
          svg.appendChild(el('line', { x1: x(n, i), y1: y(n) + 4, x2: x(n + 1, k), y2: y(n + 1) - 12 }));
        }
      }
    });
  });
  rows.forEach((row, n) => {
    row.forEach((value, i) => {
      const t = el('text', { x: x(n, i), y: y(n) });
      t.textContent = value;
      const title = el('title', {});
      title.textContent = `row ${n}, index ${i + 1}`;
      t.appendChild(title);
      svg.appendChild(t);
    });
  });
  target.innerHTML = '';
  target.appendChild(svg);
}

function traceAncestors() {
  const target = $('chain');
  try {
    const [u, v] = params();
    const doc = JSON.parse(ancestors(u, v, $('value').value.trim()));
    target.textContent = [
      `${doc.value} = ${doc.cf}`,
      ...doc.lines,
      '',
      `orphan root ${doc.root}, depth ${doc.depth}`,
      `exponents ${doc.exponents}`,
      `${doc.value} = ${doc.operator} (${doc.root})`,
    ].join('\n');
    target.classList.remove('error');
  } catch (err) {
    target.textContent = String(err);
    target.classList.add('error');
  }
}

function runChecks() {
  const target = $('checks');
  let checks;
  try {
    const [u, v, root] = params();
    checks = JSON.parse(symmetry_checks(u, v, root, Number($('row').value)));
  } catch (err) {
    return fail(target, err);
  }
  const list = document.createElement('ul');
  for (const c of checks) {
    const li = document.createElement('li');
    li.className = c.holds ? 'ok' : 'bad';
    li.textContent = c.holds
      ? `${c.identity}: holds on row ${c.n}`
      : `${c.identity}: fails at i=${c.witness.i}, ${c.witness.left} * ${c.witness.right} = ${c.witness.product}`;
    list.appendChild(li);
  }
  target.innerHTML = '';
  target.appendChild(list);
}

await init();
$('draw').addEventListener('click', drawTree);
$('trace').addEventListener('click', traceAncestors);
$('check').addEventListener('click', runChecks);
drawTree();
traceAncestors();
runChecks();
