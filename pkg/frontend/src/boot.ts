import { startPanel } from './main.js';

const root = document.getElementById('app');
if (root) {
  void startPanel({ root });
}
