import "./style.css";
import { buildApp } from "./app";

const root = document.querySelector<HTMLElement>("#app");
if (root === null) {
  throw new Error("missing #app mount point");
}
buildApp(root);
